#include "sseq/multalg.hpp"

#include <algorithm>
#include <string>

#include "sseq/error.hpp"

namespace sseq {

namespace {

int koszul(int a, int b) { return ((a * b) % 2 == 0) ? 1 : -1; }

SparseVector sparsify(const Vector& v) {
  SparseVector out;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (sgn(v[i]) != 0) out.emplace_back(i, v[i]);
  return out;
}

void add_scaled(Vector& dst, const SparseVector& src, const Scalar& c) {
  for (const auto& [i, x] : src) dst[i] += c * x;
}

void add_scaled(std::map<std::size_t, Scalar>& dst, const SparseVector& src, const Scalar& c) {
  for (const auto& [i, x] : src) {
    auto& slot = dst[i];
    slot += c * x;
    if (sgn(slot) == 0) dst.erase(i);
  }
}

Vector densify(const std::map<std::size_t, Scalar>& v, std::size_t dim) {
  Vector out(dim);
  for (const auto& [i, x] : v) out[i] = x;
  return out;
}

std::string pair_name(const BigradedAlgebra& a, std::size_t i, std::size_t j) {
  return "(" + a.element(i).name + ", " + a.element(j).name + ")";
}

}  // namespace

// ------------------------------------------------------------------ algebra

BigradedAlgebra::BigradedAlgebra(int n, std::vector<BasisElement> basis,
                                 std::map<std::pair<std::size_t, std::size_t>, Vector> products, Vector unit)
    : n_(n), basis_(std::move(basis)), unit_(std::move(unit)) {
  const std::size_t dim = basis_.size();
  if (n < 0) throw InvariantViolation("algebra: n must be non-negative");
  for (std::size_t i = 0; i < dim; ++i) {
    int m = degree(i);
    if (m < 0 || m > 2 * n) {
      throw InvariantViolation("algebra: basis element " + basis_[i].name + " has total degree " + std::to_string(m) +
                               " outside [0, " + std::to_string(2 * n) + "]");
    }
    for (std::size_t j = 0; j < i; ++j)
      if (basis_[j].name == basis_[i].name) throw InvariantViolation("algebra: duplicate basis name " + basis_[i].name);
  }
  if (unit_.size() != dim) throw InvariantViolation("algebra: unit has wrong length");

  table_.assign(dim * dim, {});
  for (auto& [key, v] : products) {
    auto [i, j] = key;
    if (i >= dim || j >= dim) throw InvariantViolation("algebra: product index out of range");
    if (v.size() != dim) throw InvariantViolation("algebra: product " + pair_name(*this, i, j) + " has wrong length");
    Bidegree expect = bidegree(i) + bidegree(j);
    for (std::size_t k = 0; k < dim; ++k) {
      if (sgn(v[k]) != 0 && bidegree(k) != expect) {
        throw InvariantViolation("algebra: product " + pair_name(*this, i, j) + " has a component on " +
                                 basis_[k].name + " outside bidegree " + to_string(expect));
      }
    }
    table_[i * dim + j] = sparsify(v);
  }

  auto u_deg = homogeneous_degree(unit_);
  if (!u_deg || *u_deg != Bidegree{0, 0}) throw InvariantViolation("algebra: unit must be a nonzero element of A^{0,0}");

  for (std::size_t i = 0; i < dim; ++i) {
    Vector e = unit_vector(dim, i);
    if (multiply(unit_, e) != e || multiply(e, unit_) != e)
      throw InvariantViolation("algebra: unit law fails on " + basis_[i].name);
  }

  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      std::map<std::size_t, Scalar> ij, ji;
      add_scaled(ij, product(i, j), 1);
      add_scaled(ji, product(j, i), koszul(degree(i), degree(j)));
      if (ij != ji) {
        throw InvariantViolation("algebra: graded commutativity fails on " + pair_name(*this, i, j) + ": " +
                                 format(densify(ij, dim)) + " vs " + format(densify(ji, dim)));
      }
    }
  }

  std::map<std::size_t, Scalar> left, right;
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      const SparseVector& ij = product(i, j);
      for (std::size_t k = 0; k < dim; ++k) {
        const SparseVector& jk = product(j, k);
        if (ij.empty() && jk.empty()) continue;
        left.clear();
        right.clear();
        for (const auto& [t, c] : ij) add_scaled(left, product(t, k), c);
        for (const auto& [t, c] : jk) add_scaled(right, product(i, t), c);
        if (left != right) {
          throw InvariantViolation("algebra: associativity fails on (" + basis_[i].name + ", " + basis_[j].name + ", " +
                                   basis_[k].name + "): " + format(densify(left, dim)) + " vs " +
                                   format(densify(right, dim)));
        }
      }
    }
  }
}

std::optional<std::size_t> BigradedAlgebra::find(const std::string& name) const {
  for (std::size_t i = 0; i < basis_.size(); ++i)
    if (basis_[i].name == name) return i;
  return std::nullopt;
}

Vector BigradedAlgebra::multiply(const Vector& x, const Vector& y) const {
  const std::size_t dim = basis_.size();
  Vector out(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    if (sgn(x[i]) == 0) continue;
    for (std::size_t j = 0; j < dim; ++j) {
      if (sgn(y[j]) == 0) continue;
      const SparseVector& p = product(i, j);
      if (p.empty()) continue;
      add_scaled(out, p, x[i] * y[j]);
    }
  }
  return out;
}

Matrix BigradedAlgebra::left_multiplication(const Vector& x) const {
  const std::size_t dim = basis_.size();
  Matrix m(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    if (sgn(x[i]) == 0) continue;
    for (std::size_t j = 0; j < dim; ++j)
      for (const auto& [k, c] : product(i, j)) m(k, j) += x[i] * c;
  }
  return m;
}

std::vector<std::size_t> BigradedAlgebra::indices(Bidegree b) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < basis_.size(); ++i)
    if (basis_[i].degree == b) out.push_back(i);
  return out;
}

std::vector<std::size_t> BigradedAlgebra::indices_in_degree(int m) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < basis_.size(); ++i)
    if (degree(i) == m) out.push_back(i);
  return out;
}

std::map<Bidegree, std::size_t> BigradedAlgebra::cell_dims() const {
  std::map<Bidegree, std::size_t> out;
  for (const auto& e : basis_) ++out[e.degree];
  return out;
}

std::vector<std::size_t> BigradedAlgebra::betti() const {
  std::vector<std::size_t> out(static_cast<std::size_t>(2 * n_ + 1));
  for (std::size_t i = 0; i < basis_.size(); ++i) ++out[static_cast<std::size_t>(degree(i))];
  return out;
}

std::optional<Bidegree> BigradedAlgebra::homogeneous_degree(const Vector& v) const {
  std::optional<Bidegree> deg;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (sgn(v[i]) == 0) continue;
    if (deg && *deg != basis_[i].degree) return std::nullopt;
    deg = basis_[i].degree;
  }
  return deg;
}

std::string BigradedAlgebra::format(const Vector& v) const {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (sgn(v[i]) == 0) continue;
    Scalar c = v[i];
    if (out.empty()) {
      if (sgn(c) < 0) out += "-";
    } else {
      out += sgn(c) < 0 ? " - " : " + ";
    }
    Scalar mag = abs(c);
    if (mag != 1) out += format_scalar(mag) + "*";
    out += basis_[i].name;
  }
  return out.empty() ? "0" : out;
}

// ------------------------------------------------------------------ derivations

Derivation::Derivation(std::shared_ptr<const BigradedAlgebra> algebra, Bidegree shift, Matrix values)
    : algebra_(std::move(algebra)), shift_(shift), values_(std::move(values)) {
  const std::size_t dim = algebra_->dim();
  if (values_.rows() != dim || values_.cols() != dim)
    throw InvariantViolation("derivation: matrix must be " + std::to_string(dim) + "x" + std::to_string(dim));
  for (std::size_t j = 0; j < dim; ++j) {
    Bidegree expect = algebra_->bidegree(j) + shift_;
    for (std::size_t i = 0; i < dim; ++i) {
      if (sgn(values_(i, j)) != 0 && algebra_->bidegree(i) != expect) {
        throw InvariantViolation("derivation: image of " + algebra_->element(j).name + " has a component on " +
                                 algebra_->element(i).name + " outside bidegree " + to_string(expect));
      }
    }
  }
}

Derivation Derivation::zero(std::shared_ptr<const BigradedAlgebra> algebra, Bidegree shift) {
  const std::size_t dim = algebra->dim();
  return Derivation(std::move(algebra), shift, Matrix(dim, dim));
}

LeibnizReport verify_leibniz(const Derivation& d) {
  const BigradedAlgebra& a = d.algebra();
  const std::size_t dim = a.dim();
  std::vector<SparseVector> images(dim);
  for (std::size_t i = 0; i < dim; ++i) images[i] = sparsify(d.image(i));
  std::map<std::size_t, Scalar> lhs, rhs;
  for (std::size_t i = 0; i < dim; ++i) {
    int sign = koszul(d.degree(), a.degree(i));
    for (std::size_t j = 0; j < dim; ++j) {
      lhs.clear();
      rhs.clear();
      for (const auto& [t, c] : a.product(i, j)) add_scaled(lhs, images[t], c);
      for (const auto& [k, x] : images[i]) add_scaled(rhs, a.product(k, j), x);
      for (const auto& [k, x] : images[j]) add_scaled(rhs, a.product(i, k), sign * x);
      if (lhs != rhs) return {false, std::make_pair(i, j), densify(lhs, dim), densify(rhs, dim)};
    }
  }
  return {};
}

bool generated_in_degree_one(const BigradedAlgebra& a) {
  if (a.indices_in_degree(0).size() != 1) return false;
  const auto gens = a.indices_in_degree(1);
  for (int m = 2; m <= 2 * a.n(); ++m) {
    const auto target = a.indices_in_degree(m);
    if (target.empty()) continue;
    std::vector<Vector> products;
    for (std::size_t g : gens) {
      for (std::size_t b : a.indices_in_degree(m - 1)) {
        Vector v(a.dim());
        add_scaled(v, a.product(g, b), 1);
        products.push_back(std::move(v));
      }
    }
    if (Subspace::span(products, a.dim()).dim() != target.size()) return false;
  }
  return true;
}

Derivation derivation_extend(std::shared_ptr<const BigradedAlgebra> alg, Bidegree shift,
                             const std::map<std::size_t, Vector>& generator_images) {
  const BigradedAlgebra& a = *alg;
  const std::size_t dim = a.dim();
  if (!generated_in_degree_one(a)) throw PreconditionError("derivation_extend: algebra is not generated in degree 1");
  const auto gens = a.indices_in_degree(1);
  Matrix d(dim, dim);
  for (const auto& [g, v] : generator_images) {
    if (g >= dim || a.degree(g) != 1)
      throw PreconditionError("derivation_extend: index " + std::to_string(g) + " is not a degree-1 basis element");
    if (v.size() != dim) throw PreconditionError("derivation_extend: image of " + a.element(g).name + " has wrong length");
    auto deg = a.homogeneous_degree(v);
    if (!is_zero(v) && (!deg || *deg != a.bidegree(g) + shift)) {
      throw PreconditionError("derivation_extend: image of " + a.element(g).name + " is not homogeneous of bidegree " +
                              to_string(a.bidegree(g) + shift));
    }
    for (std::size_t k = 0; k < dim; ++k) d(k, g) = v[k];
  }

  const int sign = koszul(shift.total(), 1);
  for (int m = 2; m <= 2 * a.n(); ++m) {
    const auto target = a.indices_in_degree(m);
    if (target.empty()) continue;
    const auto lower = a.indices_in_degree(m - 1);
    // Candidates g·b with their forced values D(g) b ± g D(b).
    std::vector<std::pair<std::size_t, std::size_t>> cands;
    std::vector<Vector> cand_products, cand_values;
    for (std::size_t g : gens) {
      Vector dg = d.column(g);
      for (std::size_t b : lower) {
        Vector prod(target.size());
        bool nonzero = false;
        for (const auto& [t, c] : a.product(g, b)) {
          auto it = std::lower_bound(target.begin(), target.end(), t);
          prod[static_cast<std::size_t>(it - target.begin())] = c;
          nonzero = true;
        }
        Vector value = a.multiply(dg, unit_vector(dim, b));
        Vector second = a.multiply(unit_vector(dim, g), d.column(b));
        for (std::size_t k = 0; k < dim; ++k) value[k] += sign * second[k];
        if (!nonzero && is_zero(value)) continue;
        cands.emplace_back(g, b);
        cand_products.push_back(std::move(prod));
        cand_values.push_back(std::move(value));
      }
    }
    Matrix p = Matrix::from_columns(cand_products, target.size());
    for (std::size_t k = 0; k < target.size(); ++k) {
      auto x = solve(p, unit_vector(target.size(), k));
      if (!x) throw InternalMismatch("derivation_extend: degree-1 products do not span degree " + std::to_string(m));
      Vector value(dim);
      for (std::size_t c = 0; c < cands.size(); ++c)
        if (sgn((*x)[c]) != 0)
          for (std::size_t i = 0; i < dim; ++i) value[i] += (*x)[c] * cand_values[c][i];
      for (std::size_t i = 0; i < dim; ++i) d(i, target[k]) = value[i];
    }
    for (std::size_t c = 0; c < cands.size(); ++c) {
      Vector got(dim);
      for (std::size_t k = 0; k < target.size(); ++k)
        if (sgn(cand_products[c][k]) != 0)
          for (std::size_t i = 0; i < dim; ++i) got[i] += cand_products[c][k] * d(i, target[k]);
      if (got != cand_values[c]) {
        auto [g, b] = cands[c];
        throw InvariantViolation("derivation_extend: images are inconsistent with the relations in degree " +
                                 std::to_string(m) + ": Leibniz forces D(" + a.element(g).name + "*" +
                                 a.element(b).name + ") = " + a.format(cand_values[c]) +
                                 " but the relations force " + a.format(got));
      }
    }
  }

  Derivation out(std::move(alg), shift, std::move(d));
  LeibnizReport rep = verify_leibniz(out);
  if (!rep.holds) {
    throw InvariantViolation("derivation_extend: extension violates Leibniz on " +
                             pair_name(out.algebra(), rep.witness->first, rep.witness->second));
  }
  return out;
}

std::vector<Derivation> derivation_space(std::shared_ptr<const BigradedAlgebra> alg, Bidegree shift) {
  const BigradedAlgebra& a = *alg;
  const std::size_t dim = a.dim();
  // Unknown (i, u): coefficient of e_u in D(e_i).
  std::vector<std::vector<std::size_t>> targets(dim);
  std::vector<std::size_t> offset(dim + 1);
  for (std::size_t i = 0; i < dim; ++i) {
    targets[i] = a.indices(a.bidegree(i) + shift);
    offset[i + 1] = offset[i] + targets[i].size();
  }
  const std::size_t unknowns = offset[dim];
  std::vector<Derivation> out;
  if (unknowns == 0) return out;

  auto slot = [&](std::size_t i, std::size_t u) -> std::size_t {
    auto it = std::lower_bound(targets[i].begin(), targets[i].end(), u);
    return offset[i] + static_cast<std::size_t>(it - targets[i].begin());
  };

  const int dsign = shift.total();
  Subspace rows = Subspace::zero(unknowns);
  std::vector<Vector> batch;
  auto flush = [&] {
    if (batch.empty()) return;
    rows = rows + Subspace::span(batch, unknowns);
    batch.clear();
  };
  for (std::size_t i = 0; i < dim; ++i) {
    const int sign = koszul(dsign, a.degree(i));
    for (std::size_t j = 0; j < dim; ++j) {
      const auto comps = a.indices(a.bidegree(i) + a.bidegree(j) + shift);
      for (std::size_t k : comps) {
        Vector row(unknowns);
        for (const auto& [t, c] : a.product(i, j))
          if (std::binary_search(targets[t].begin(), targets[t].end(), k)) row[slot(t, k)] += c;
        for (std::size_t u : targets[i])
          for (const auto& [w, c] : a.product(u, j))
            if (w == k) row[slot(i, u)] -= c;
        for (std::size_t u : targets[j])
          for (const auto& [w, c] : a.product(i, u))
            if (w == k) row[slot(j, u)] -= sign * c;
        if (!is_zero(row)) batch.push_back(std::move(row));
        if (batch.size() >= 256) flush();
      }
    }
  }
  flush();
  for (const Vector& sol : nullspace(Matrix::from_rows(rows.vectors(), unknowns))) {
    Matrix m(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t u : targets[i]) m(u, i) = sol[slot(i, u)];
    out.emplace_back(alg, shift, std::move(m));
  }
  return out;
}

// ------------------------------------------------------------------ pairings

Vector PagePairing::apply(Bidegree b1, const Vector& x, Bidegree b2, const Vector& y) const {
  auto it = maps.find({b1, b2});
  if (it == maps.end()) return {};
  const Matrix& m = it->second;
  Vector out(m.rows());
  const std::size_t d2 = y.size();
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (sgn(x[i]) == 0) continue;
    for (std::size_t j = 0; j < d2; ++j) {
      if (sgn(y[j]) == 0) continue;
      Scalar c = x[i] * y[j];
      for (std::size_t k = 0; k < m.rows(); ++k) out[k] += c * m(k, i * d2 + j);
    }
  }
  return out;
}

SSPairing::SSPairing(SpectralSequence& left, SpectralSequence& right, SpectralSequence& target, PagePairing first)
    : left_(&left), right_(&right), target_(&target) {
  if (first.r < 1) throw PreconditionError("pairing: page index must be at least 1");
  pages_.push_back(std::move(first));
}

const PagePairing& SSPairing::at(int r) {
  if (r < pages_.front().r) throw PreconditionError("pairing: page " + std::to_string(r) + " precedes the first given page");
  while (pages_.back().r < r) {
    PagePairing next = induced_pairing(*this, pages_.back().r);
    pages_.push_back(std::move(next));
  }
  return pages_[static_cast<std::size_t>(r - pages_.front().r)];
}

namespace {

Vector combine_columns(const Matrix& m, const Vector& coeffs) { return m.apply(coeffs); }

std::string cell_pair(Bidegree a, Bidegree b) { return "(" + to_string(a) + ") x (" + to_string(b) + ")"; }

}  // namespace

void check_pairing_leibniz(SSPairing& pairing, const PagePairing& cup) {
  const int r = cup.r;
  const Page& e1 = pairing.left().page(r);
  const Page& e2 = pairing.right().page(r);
  const Page& e = pairing.target().page(r);
  for (const auto& [c1, cell1] : e1.cells()) {
    const std::size_t n1 = cell1.space.dim();
    if (n1 == 0) continue;
    Matrix d1 = e1.differential(c1);
    for (const auto& [c2, cell2] : e2.cells()) {
      const std::size_t n2 = cell2.space.dim();
      if (n2 == 0) continue;
      Bidegree sum = c1 + c2;
      Matrix d = e.differential(sum);
      Matrix d2 = e2.differential(c2);
      const int sign = koszul(c1.total(), 1);
      for (std::size_t i = 0; i < n1; ++i) {
        Vector x = unit_vector(n1, i);
        Vector dx = combine_columns(d1, x);
        for (std::size_t j = 0; j < n2; ++j) {
          Vector y = unit_vector(n2, j);
          Vector xy = cup.apply(c1, x, c2, y);
          Vector lhs = xy.empty() ? Vector(d.rows()) : d.apply(xy);
          Vector rhs(d.rows());
          Vector a = cup.apply(e1.target(c1), dx, c2, y);
          Vector b = cup.apply(c1, x, e2.target(c2), combine_columns(d2, y));
          for (std::size_t k = 0; k < rhs.size(); ++k) {
            if (k < a.size()) rhs[k] += a[k];
            if (k < b.size()) rhs[k] += sign * b[k];
          }
          if (lhs != rhs) {
            throw InvariantViolation("pairing: Leibniz fails on page " + std::to_string(r) + " at cells " +
                                     cell_pair(c1, c2) + ", basis pair (" + std::to_string(i) + ", " +
                                     std::to_string(j) + "): " + format_vector(lhs) + " vs " + format_vector(rhs));
          }
        }
      }
    }
  }
}

PagePairing induced_pairing(SSPairing& pairing, int r) {
  const PagePairing& cup = pairing.at(r);
  check_pairing_leibniz(pairing, cup);
  const Page& e1 = pairing.left().page(r);
  const Page& e2 = pairing.right().page(r);
  const Page& e = pairing.target().page(r);
  const Page& n1p = pairing.left().page(r + 1);
  const Page& n2p = pairing.right().page(r + 1);
  const Page& np = pairing.target().page(r + 1);

  // ι: new classes in old coordinates.
  auto iota = [](const PageCell& old_cell, const PageCell& new_cell) {
    std::vector<Vector> out;
    for (const auto& v : new_cell.space.complement()) out.push_back(old_cell.space.coordinates(v));
    return out;
  };
  // π: old coordinates of a d_r-cycle to the new page; nullopt if not a cycle.
  auto project = [](const PageCell& old_cell, const PageCell& new_cell, const Vector& y) {
    return new_cell.space.try_coordinates(old_cell.space.lift(y));
  };
  auto image_basis = [](const Page& p, Bidegree c) {
    Matrix in = p.differential(Bidegree{c.p - p.r(), c.q + p.r() - 1});
    return in.columns();
  };

  PagePairing out;
  out.r = r + 1;
  for (const auto& [c1, new1] : n1p.cells()) {
    if (new1.space.dim() == 0) continue;
    const PageCell& old1 = *e1.cell(c1);
    for (const auto& [c2, new2] : n2p.cells()) {
      if (new2.space.dim() == 0) continue;
      const PageCell& old2 = *e2.cell(c2);
      Bidegree sum = c1 + c2;
      const PageCell* old_t = e.cell(sum);
      const PageCell* new_t = np.cell(sum);
      const std::size_t tdim = new_t ? new_t->space.dim() : 0;

      // Well-definedness: ker × im and im × ker land in the new denominator.
      if (old_t) {
        auto check = [&](const std::vector<Vector>& xs, const std::vector<Vector>& ys, const char* what) {
          for (const auto& x : xs) {
            for (const auto& y : ys) {
              Vector z = cup.apply(c1, x, c2, y);
              if (z.empty()) continue;
              Vector lifted = old_t->space.lift(z);
              bool ok = new_t ? new_t->space.denominator().contains(lifted) : is_zero(z);
              if (!ok) {
                throw InvariantViolation(std::string("pairing: product of ") + what + " classes is not a boundary on page " +
                                         std::to_string(r) + " at cells " + cell_pair(c1, c2) + ": x = " +
                                         format_vector(x) + ", y = " + format_vector(y));
              }
            }
          }
        };
        check(nullspace(e1.differential(c1)), image_basis(e2, c2), "cycle x boundary");
        check(image_basis(e1, c1), nullspace(e2.differential(c2)), "boundary x cycle");
      }
      if (tdim == 0) continue;

      auto xs = iota(old1, new1);
      auto ys = iota(old2, new2);
      Matrix m(tdim, xs.size() * ys.size());
      for (std::size_t i = 0; i < xs.size(); ++i) {
        for (std::size_t j = 0; j < ys.size(); ++j) {
          Vector z = cup.apply(c1, xs[i], c2, ys[j]);
          auto coords = project(*old_t, *new_t, z);
          if (!coords) {
            throw InvariantViolation("pairing: product of cycles is not a cycle on page " + std::to_string(r) +
                                     " at cells " + cell_pair(c1, c2));
          }
          for (std::size_t k = 0; k < tdim; ++k) m(k, i * ys.size() + j) = (*coords)[k];
        }
      }
      out.maps.emplace(std::make_pair(c1, c2), std::move(m));
    }
  }
  return out;
}

PagePairing product_pairing(SpectralSequence& left, SpectralSequence& right, SpectralSequence& target,
                            const ChainProduct& mu, int r) {
  const Page& e1 = left.page(r);
  const Page& e2 = right.page(r);
  const Page& e = target.page(r);
  PagePairing out;
  out.r = r;
  for (const auto& [c1, cell1] : e1.cells()) {
    if (cell1.space.dim() == 0) continue;
    for (const auto& [c2, cell2] : e2.cells()) {
      if (cell2.space.dim() == 0) continue;
      Bidegree sum = c1 + c2;
      const PageCell* t = e.cell(sum);
      if (!t || t->space.dim() == 0) continue;
      const std::size_t d2 = cell2.reps.size();
      Matrix m(t->space.dim(), cell1.reps.size() * d2);
      for (std::size_t i = 0; i < cell1.reps.size(); ++i) {
        for (std::size_t j = 0; j < d2; ++j) {
          Vector z = mu(c1.total(), cell1.reps[i], c2.total(), cell2.reps[j]);
          auto coords = t->space.try_coordinates(z);
          if (!coords) {
            throw InvariantViolation("product_pairing: product of representatives at cells " + cell_pair(c1, c2) +
                                     " is not an r-cycle of the target: " + format_vector(z));
          }
          for (std::size_t k = 0; k < coords->size(); ++k) m(k, i * d2 + j) = (*coords)[k];
        }
      }
      out.maps.emplace(std::make_pair(c1, c2), std::move(m));
    }
  }
  return out;
}

}  // namespace sseq
