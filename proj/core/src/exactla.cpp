#include "sseq/exactla.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <utility>

#include "sseq/error.hpp"

namespace sseq {

namespace {

bool valid_integer(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

std::string trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

// Subtracts factor * src from dst, skipping the leading `from` entries.
void axpy_neg(Scalar* dst, const Scalar* src, const Scalar& factor, std::size_t from, std::size_t n) {
  for (std::size_t j = from; j < n; ++j) {
    if (sgn(src[j]) != 0) dst[j] -= factor * src[j];
  }
}

}  // namespace

Scalar parse_scalar(std::string_view text) {
  std::string s = trim(text);
  auto slash = s.find('/');
  std::string num = slash == std::string::npos ? s : s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (num.size() > 0 && num.front() == '+') num.erase(0, 1);
  if (!valid_integer(num) || !valid_integer(den) || den.front() == '-' || den.front() == '+') {
    throw ParseError("scalar", "not a rational number: \"" + std::string(text) + "\"");
  }
  mpz_class n(num, 10);
  mpz_class d(den, 10);
  if (d == 0) throw ParseError("scalar", "zero denominator: \"" + std::string(text) + "\"");
  Scalar x(n, d);
  x.canonicalize();
  return x;
}

std::string format_scalar(const Scalar& x) {
  if (x.get_den() == 1) return x.get_num().get_str();
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

std::string format_vector(std::span<const Scalar> v) {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out << ", ";
    out << format_scalar(v[i]);
  }
  out << ')';
  return out.str();
}

Vector zero_vector(std::size_t n) { return Vector(n); }

Vector unit_vector(std::size_t n, std::size_t i) {
  Vector v(n);
  v[i] = 1;
  return v;
}

bool is_zero(std::span<const Scalar> v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& x) { return sgn(x) == 0; });
}

// ---------------------------------------------------------------- Matrix

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(const std::vector<Vector>& rows, std::size_t cols) {
  Matrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw InvariantViolation("from_rows: row " + std::to_string(i) + " has wrong length");
    std::copy(rows[i].begin(), rows[i].end(), m.data_.begin() + static_cast<std::ptrdiff_t>(i * cols));
  }
  return m;
}

Matrix Matrix::from_columns(const std::vector<Vector>& cols, std::size_t rows) {
  Matrix m(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != rows) throw InvariantViolation("from_columns: column " + std::to_string(j) + " has wrong length");
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
  }
  return m;
}

Vector Matrix::row(std::size_t i) const {
  auto r = row_span(i);
  return Vector(r.begin(), r.end());
}

Vector Matrix::column(std::size_t j) const {
  Vector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

std::vector<Vector> Matrix::columns() const {
  std::vector<Vector> out;
  out.reserve(cols_);
  for (std::size_t j = 0; j < cols_; ++j) out.push_back(column(j));
  return out;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Vector Matrix::apply(std::span<const Scalar> v) const {
  if (v.size() != cols_) throw InvariantViolation("apply: vector length " + std::to_string(v.size()) + " != cols " + std::to_string(cols_));
  Vector out(rows_);
  for (std::size_t j = 0; j < cols_; ++j) {
    if (sgn(v[j]) == 0) continue;
    for (std::size_t i = 0; i < rows_; ++i) {
      const Scalar& a = (*this)(i, j);
      if (sgn(a) != 0) out[i] += a * v[j];
    }
  }
  return out;
}

Matrix Matrix::scaled(const Scalar& s) const {
  Matrix m = *this;
  for (auto& x : m.data_) x *= s;
  return m;
}

Matrix Matrix::submatrix(std::span<const std::size_t> row_idx, std::span<const std::size_t> col_idx) const {
  Matrix m(row_idx.size(), col_idx.size());
  for (std::size_t i = 0; i < row_idx.size(); ++i)
    for (std::size_t j = 0; j < col_idx.size(); ++j) m(i, j) = (*this)(row_idx[i], col_idx[j]);
  return m;
}

bool Matrix::is_zero() const { return sseq::is_zero(data_); }

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) {
    throw InvariantViolation("matrix product: shape " + std::to_string(a.rows_) + "x" + std::to_string(a.cols_) +
                             " times " + std::to_string(b.rows_) + "x" + std::to_string(b.cols_));
  }
  Matrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Scalar& x = a(i, k);
      if (sgn(x) == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        const Scalar& y = b(k, j);
        if (sgn(y) != 0) c(i, j) += x * y;
      }
    }
  }
  return c;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw InvariantViolation("matrix sum: shape mismatch");
  Matrix c = a;
  for (std::size_t k = 0; k < c.data_.size(); ++k) c.data_[k] += b.data_[k];
  return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw InvariantViolation("matrix difference: shape mismatch");
  Matrix c = a;
  for (std::size_t k = 0; k < c.data_.size(); ++k) c.data_[k] -= b.data_[k];
  return c;
}

Matrix hstack(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw InvariantViolation("hstack: row count mismatch");
  Matrix m(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) m(i, a.cols() + j) = b(i, j);
  }
  return m;
}

// ---------------------------------------------------------------- elimination

EchelonForm row_reduce(Matrix m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t sel = r;
    while (sel < rows && sgn(m(sel, c)) == 0) ++sel;
    if (sel == rows) continue;
    if (sel != r)
      for (std::size_t j = c; j < cols; ++j) swap(m(sel, j), m(r, j));
    Scalar inv = 1 / m(r, c);
    for (std::size_t j = c; j < cols; ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || sgn(m(i, c)) == 0) continue;
      Scalar factor = m(i, c);
      axpy_neg(&m(i, 0), &m(r, 0), factor, c, cols);
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), std::move(pivots)};
}

std::size_t rank(const Matrix& m) { return row_reduce(m).pivots.size(); }

std::vector<Vector> nullspace(const Matrix& m) {
  EchelonForm ef = row_reduce(m);
  const std::size_t n = m.cols();
  std::vector<bool> is_pivot(n, false);
  for (auto p : ef.pivots) is_pivot[p] = true;
  std::vector<Vector> out;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    Vector v(n);
    v[f] = 1;
    for (std::size_t i = 0; i < ef.pivots.size(); ++i) v[ef.pivots[i]] = -ef.reduced(i, f);
    out.push_back(std::move(v));
  }
  return out;
}

std::optional<Vector> solve(const Matrix& m, std::span<const Scalar> b) {
  if (b.size() != m.rows()) throw InvariantViolation("solve: right-hand side has wrong length");
  Matrix aug(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  EchelonForm ef = row_reduce(std::move(aug));
  if (!ef.pivots.empty() && ef.pivots.back() == m.cols()) return std::nullopt;
  Vector x(m.cols());
  for (std::size_t i = 0; i < ef.pivots.size(); ++i) x[ef.pivots[i]] = ef.reduced(i, m.cols());
  return x;
}

// ---------------------------------------------------------------- Subspace

Subspace Subspace::zero(std::size_t ambient) {
  Subspace s;
  s.ambient_ = ambient;
  return s;
}

Subspace Subspace::full(std::size_t ambient) {
  Subspace s;
  s.ambient_ = ambient;
  for (std::size_t i = 0; i < ambient; ++i) {
    s.rows_.push_back(unit_vector(ambient, i));
    s.pivots_.push_back(i);
  }
  return s;
}

Subspace Subspace::span(const std::vector<Vector>& vectors, std::size_t ambient) {
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].size() != ambient) {
      throw InvariantViolation("span: vector " + std::to_string(i) + " has dimension " +
                               std::to_string(vectors[i].size()) + ", expected " + std::to_string(ambient));
    }
  }
  Subspace s;
  s.ambient_ = ambient;
  if (vectors.empty() || ambient == 0) return s;
  EchelonForm ef = row_reduce(Matrix::from_rows(vectors, ambient));
  s.pivots_ = ef.pivots;
  for (std::size_t i = 0; i < ef.pivots.size(); ++i) s.rows_.push_back(ef.reduced.row(i));
  return s;
}

Subspace Subspace::column_span(const Matrix& m) { return span(m.columns(), m.rows()); }

Matrix Subspace::basis() const { return Matrix::from_columns(rows_, ambient_); }

std::optional<Vector> Subspace::coordinates(std::span<const Scalar> v) const {
  if (v.size() != ambient_) throw InvariantViolation("coordinates: dimension mismatch");
  Vector coeffs(rows_.size());
  for (std::size_t i = 0; i < rows_.size(); ++i) coeffs[i] = v[pivots_[i]];
  if (!is_zero(reduce(v))) return std::nullopt;
  return coeffs;
}

Vector Subspace::reduce(std::span<const Scalar> v) const {
  if (v.size() != ambient_) throw InvariantViolation("reduce: dimension mismatch");
  Vector out(v.begin(), v.end());
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    Scalar c = out[pivots_[i]];
    if (sgn(c) == 0) continue;
    axpy_neg(out.data(), rows_[i].data(), c, 0, ambient_);
  }
  return out;
}

Vector Subspace::combine(std::span<const Scalar> coeffs) const {
  if (coeffs.size() != rows_.size()) throw InvariantViolation("combine: coefficient count mismatch");
  Vector out(ambient_);
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (sgn(coeffs[i]) == 0) continue;
    for (std::size_t j = 0; j < ambient_; ++j)
      if (sgn(rows_[i][j]) != 0) out[j] += coeffs[i] * rows_[i][j];
  }
  return out;
}

bool Subspace::contains(std::span<const Scalar> v) const { return is_zero(reduce(v)); }

bool Subspace::contains(const Subspace& other) const {
  if (other.ambient_ != ambient_) return false;
  return std::all_of(other.rows_.begin(), other.rows_.end(), [&](const Vector& v) { return contains(v); });
}

Subspace operator+(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw InvariantViolation("subspace sum: ambient mismatch");
  if (b.dim() == 0) return a;
  if (a.dim() == 0) return b;
  std::vector<Vector> all = a.vectors();
  all.insert(all.end(), b.vectors().begin(), b.vectors().end());
  return Subspace::span(all, a.ambient_dim());
}

Subspace intersect(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw InvariantViolation("subspace intersection: ambient mismatch");
  const std::size_t n = a.ambient_dim();
  if (a.dim() == 0 || b.dim() == 0) return Subspace::zero(n);
  if (a.dim() == n) return b;
  if (b.dim() == n) return a;
  // Solve Σ x_i a_i − Σ y_j b_j = 0 and keep Σ x_i a_i.
  Matrix m(n, a.dim() + b.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t k = 0; k < n; ++k) m(k, i) = a.vectors()[i][k];
  for (std::size_t j = 0; j < b.dim(); ++j)
    for (std::size_t k = 0; k < n; ++k) m(k, a.dim() + j) = -b.vectors()[j][k];
  std::vector<Vector> out;
  for (const auto& sol : nullspace(m)) {
    out.push_back(a.combine(std::span<const Scalar>(sol.data(), a.dim())));
  }
  return Subspace::span(out, n);
}

Subspace image(const Matrix& f, const Subspace& u) {
  if (f.cols() != u.ambient_dim()) throw InvariantViolation("image: map source dimension mismatch");
  std::vector<Vector> out;
  out.reserve(u.dim());
  for (const auto& v : u.vectors()) out.push_back(f.apply(v));
  return Subspace::span(out, f.rows());
}

Subspace preimage(const Matrix& f, const Subspace& w) {
  if (f.rows() != w.ambient_dim()) throw InvariantViolation("preimage: map target dimension mismatch");
  const std::size_t n = f.cols();
  if (w.dim() == w.ambient_dim()) return Subspace::full(n);
  // Functionals cutting out w: one per non-pivot coordinate of its echelon basis.
  Matrix ann_f(w.ambient_dim() - w.dim(), n);
  std::vector<bool> is_pivot(w.ambient_dim(), false);
  for (auto p : w.pivots()) is_pivot[p] = true;
  std::size_t r = 0;
  for (std::size_t free = 0; free < w.ambient_dim(); ++free) {
    if (is_pivot[free]) continue;
    // φ(x) = x[free] − Σ_i w_i[free] x[pivot_i] vanishes exactly on w.
    Vector phi(w.ambient_dim());
    phi[free] = 1;
    for (std::size_t i = 0; i < w.dim(); ++i) phi[w.pivots()[i]] = -w.vectors()[i][free];
    for (std::size_t j = 0; j < n; ++j) {
      Scalar acc;
      for (std::size_t k = 0; k < phi.size(); ++k)
        if (sgn(phi[k]) != 0 && sgn(f(k, j)) != 0) acc += phi[k] * f(k, j);
      ann_f(r, j) = acc;
    }
    ++r;
  }
  return Subspace::span(nullspace(ann_f), n);
}

Subspace kernel(const Matrix& f) { return Subspace::span(nullspace(f), f.cols()); }

// ---------------------------------------------------------------- Subquotient

Subquotient::Subquotient(Subspace numerator, Subspace denominator)
    : numerator_(std::move(numerator)), denominator_(std::move(denominator)) {
  if (numerator_.ambient_dim() != denominator_.ambient_dim()) {
    throw InvariantViolation("subquotient: ambient dimensions differ");
  }
  for (std::size_t i = 0; i < denominator_.dim(); ++i) {
    if (!numerator_.contains(denominator_.vectors()[i])) {
      throw InvariantViolation("subquotient: denominator basis vector " + format_vector(denominator_.vectors()[i]) +
                               " is not in the numerator");
    }
  }
  std::vector<Vector> reduced;
  reduced.reserve(numerator_.dim());
  for (const auto& z : numerator_.vectors()) reduced.push_back(denominator_.reduce(z));
  complement_ = Subspace::span(reduced, numerator_.ambient_dim());
}

Subquotient Subquotient::whole(std::size_t ambient) {
  return Subquotient(Subspace::full(ambient), Subspace::zero(ambient));
}

std::optional<Vector> Subquotient::try_coordinates(std::span<const Scalar> v) const {
  return complement_.coordinates(denominator_.reduce(v));
}

Vector Subquotient::coordinates(std::span<const Scalar> v) const {
  auto c = try_coordinates(v);
  if (!c) throw InvariantViolation("subquotient coordinates: vector " + format_vector(v) + " is not in the numerator");
  return *std::move(c);
}

Vector Subquotient::lift(std::span<const Scalar> coords) const { return complement_.combine(coords); }

Matrix induced_map(const Matrix& f, const Subquotient& source, const Subquotient& target) {
  if (f.cols() != source.ambient_dim() || f.rows() != target.ambient_dim()) {
    throw InvariantViolation("induced_map: map shape " + std::to_string(f.rows()) + "x" + std::to_string(f.cols()) +
                             " does not match subquotient ambients");
  }
  for (const auto& b : source.denominator().vectors()) {
    Vector fb = f.apply(b);
    if (!target.denominator().contains(fb)) {
      throw InvariantViolation("induced_map: denominator basis vector " + format_vector(b) + " maps to " +
                               format_vector(fb) + ", outside the target denominator");
    }
  }
  Matrix m(target.dim(), source.dim());
  for (std::size_t j = 0; j < source.dim(); ++j) {
    Vector fz = f.apply(source.complement()[j]);
    auto c = target.try_coordinates(fz);
    if (!c) {
      throw InvariantViolation("induced_map: basis vector " + format_vector(source.complement()[j]) + " maps to " +
                               format_vector(fz) + ", outside the target numerator");
    }
    for (std::size_t i = 0; i < target.dim(); ++i) m(i, j) = (*c)[i];
  }
  // Numerator vectors outside the complement differ from it by denominator
  // elements, already checked above.
  return m;
}

PairingRank pairing_rank(const Matrix& gram) {
  if (gram.rows() != gram.cols()) throw InvariantViolation("pairing_rank: Gram matrix is not square");
  PairingRank out;
  out.rank = rank(gram);
  out.nondegenerate = out.rank == gram.rows();
  return out;
}

}  // namespace sseq
