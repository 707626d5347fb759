#include "sseq/filtered.hpp"

#include <string>
#include <utility>

#include "sseq/error.hpp"

namespace sseq {

// ---------------------------------------------------------------- CochainComplex

CochainComplex::CochainComplex(int lo, int hi, std::vector<std::size_t> dims, std::vector<Matrix> differentials)
    : lo_(lo), hi_(hi), dims_(std::move(dims)), d_(std::move(differentials)) {
  if (hi_ < lo_) throw InvariantViolation("complex: empty degree range [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  const auto length = static_cast<std::size_t>(hi_ - lo_ + 1);
  if (dims_.size() != length) throw InvariantViolation("complex: expected " + std::to_string(length) + " dimensions");
  if (d_.size() + 1 != length) throw InvariantViolation("complex: expected " + std::to_string(length - 1) + " differentials");
  for (std::size_t k = 0; k < d_.size(); ++k) {
    if (d_[k].cols() != dims_[k] || d_[k].rows() != dims_[k + 1]) {
      throw InvariantViolation("complex: d^" + std::to_string(lo_ + static_cast<int>(k)) + " has shape " +
                               std::to_string(d_[k].rows()) + "x" + std::to_string(d_[k].cols()) + ", expected " +
                               std::to_string(dims_[k + 1]) + "x" + std::to_string(dims_[k]));
    }
  }
  for (std::size_t k = 0; k + 1 < d_.size(); ++k) {
    Matrix dd = d_[k + 1] * d_[k];
    if (dd.is_zero()) continue;
    for (std::size_t j = 0; j < dd.cols(); ++j) {
      Vector col = dd.column(j);
      if (!is_zero(col)) {
        throw InvariantViolation("complex: d^" + std::to_string(lo_ + static_cast<int>(k) + 1) + " ∘ d^" +
                                 std::to_string(lo_ + static_cast<int>(k)) + " ≠ 0 on basis vector e" + std::to_string(j) +
                                 " of degree " + std::to_string(lo_ + static_cast<int>(k)) + " (image " + format_vector(col) + ")");
      }
    }
  }
}

std::size_t CochainComplex::dim(int n) const {
  if (!in_range(n)) return 0;
  return dims_[static_cast<std::size_t>(n - lo_)];
}

Matrix CochainComplex::d(int n) const {
  if (n >= lo_ && n < hi_) return d_[static_cast<std::size_t>(n - lo_)];
  return Matrix(dim(n + 1), dim(n));
}

std::size_t CochainComplex::total_dim() const {
  std::size_t t = 0;
  for (auto x : dims_) t += x;
  return t;
}

Subquotient cohomology(const CochainComplex& k, int n) {
  const std::size_t dim = k.dim(n);
  Subspace z = kernel(k.d(n));
  Subspace b = Subspace::column_span(k.d(n - 1));
  if (dim == 0) return Subquotient(Subspace::zero(0), Subspace::zero(0));
  return Subquotient(std::move(z), std::move(b));
}

// ---------------------------------------------------------------- truncations

namespace {

CochainComplex assemble(int lo, int hi, std::vector<std::size_t> dims, std::vector<Matrix> d) {
  return CochainComplex(lo, hi, std::move(dims), std::move(d));
}

}  // namespace

CochainComplex truncate_below(const CochainComplex& k, int p) {
  Subspace ker_p = kernel(k.d(p));
  std::vector<std::size_t> dims;
  for (int i = k.lo(); i <= k.hi(); ++i) {
    dims.push_back(i < p ? k.dim(i) : i == p ? ker_p.dim() : 0);
  }
  std::vector<Matrix> d;
  for (int i = k.lo(); i < k.hi(); ++i) {
    const std::size_t src = dims[static_cast<std::size_t>(i - k.lo())];
    const std::size_t tgt = dims[static_cast<std::size_t>(i + 1 - k.lo())];
    if (i + 1 < p) {
      d.push_back(k.d(i));
    } else if (i + 1 == p) {
      Matrix di = k.d(i);
      Matrix m(tgt, src);
      for (std::size_t j = 0; j < src; ++j) {
        auto c = ker_p.coordinates(di.column(j));
        if (!c) throw InternalMismatch("truncate_below: image of d^" + std::to_string(i) + " not in ker d^" + std::to_string(p));
        for (std::size_t r = 0; r < tgt; ++r) m(r, j) = (*c)[r];
      }
      d.push_back(std::move(m));
    } else {
      d.emplace_back(tgt, src);
    }
  }
  return assemble(k.lo(), k.hi(), std::move(dims), std::move(d));
}

std::vector<Matrix> truncate_below_inclusion(const CochainComplex& k, int p) {
  std::vector<Matrix> maps;
  for (int i = k.lo(); i <= k.hi(); ++i) {
    if (i < p) {
      maps.push_back(Matrix::identity(k.dim(i)));
    } else if (i == p) {
      maps.push_back(kernel(k.d(p)).basis());
    } else {
      maps.emplace_back(k.dim(i), 0);
    }
  }
  return maps;
}

CochainComplex truncate_above(const CochainComplex& k, int p) {
  Subquotient coker(Subspace::full(k.dim(p)), Subspace::column_span(k.d(p - 1)));
  std::vector<std::size_t> dims;
  for (int i = k.lo(); i <= k.hi(); ++i) {
    dims.push_back(i < p ? 0 : i == p ? coker.dim() : k.dim(i));
  }
  std::vector<Matrix> d;
  for (int i = k.lo(); i < k.hi(); ++i) {
    const std::size_t src = dims[static_cast<std::size_t>(i - k.lo())];
    const std::size_t tgt = dims[static_cast<std::size_t>(i + 1 - k.lo())];
    if (i > p) {
      d.push_back(k.d(i));
    } else if (i == p) {
      Matrix di = k.d(i);
      Matrix m(tgt, src);
      for (std::size_t j = 0; j < src; ++j) {
        Vector v = di.apply(coker.complement()[j]);
        for (std::size_t r = 0; r < tgt; ++r) m(r, j) = v[r];
      }
      d.push_back(std::move(m));
    } else {
      d.emplace_back(tgt, src);
    }
  }
  return assemble(k.lo(), k.hi(), std::move(dims), std::move(d));
}

std::vector<Matrix> truncate_above_projection(const CochainComplex& k, int p) {
  Subquotient coker(Subspace::full(k.dim(p)), Subspace::column_span(k.d(p - 1)));
  std::vector<Matrix> maps;
  for (int i = k.lo(); i <= k.hi(); ++i) {
    if (i > p) {
      maps.push_back(Matrix::identity(k.dim(i)));
    } else if (i == p) {
      Matrix m(coker.dim(), k.dim(p));
      for (std::size_t j = 0; j < k.dim(p); ++j) {
        Vector c = coker.coordinates(unit_vector(k.dim(p), j));
        for (std::size_t r = 0; r < coker.dim(); ++r) m(r, j) = c[r];
      }
      maps.push_back(std::move(m));
    } else {
      maps.emplace_back(0, k.dim(i));
    }
  }
  return maps;
}

CochainComplex window(const CochainComplex& k, int p) { return truncate_above(truncate_below(k, p), p - 1); }

Matrix induced_on_cohomology(const CochainComplex& source, const CochainComplex& target, int n, const Matrix& f) {
  return induced_map(f, cohomology(source, n), cohomology(target, n));
}

// ---------------------------------------------------------------- Filtration

Filtration::Filtration(int lo, int hi, const std::vector<std::size_t>& dims, int p_first,
                       std::vector<std::vector<Subspace>> levels)
    : lo_(lo), hi_(hi) {
  const auto length = static_cast<std::size_t>(hi - lo + 1);
  if (dims.size() != length) throw InvariantViolation("filtration: dimension table has wrong length");
  for (std::size_t k = 0; k < length; ++k) {
    full_.push_back(Subspace::full(dims[k]));
    zero_.push_back(Subspace::zero(dims[k]));
  }
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (levels[i].size() != length) throw InvariantViolation("filtration: level " + std::to_string(p_first + static_cast<int>(i)) + " has wrong degree count");
    for (std::size_t k = 0; k < length; ++k) {
      if (levels[i][k].ambient_dim() != dims[k]) {
        throw InvariantViolation("filtration: F^" + std::to_string(p_first + static_cast<int>(i)) + " K^" +
                                 std::to_string(lo + static_cast<int>(k)) + " lives in the wrong ambient space");
      }
    }
  }
  // Extended table: whole space at p_first − 1, zero after the last level.
  const int first = p_first - 1;
  const int last = p_first + static_cast<int>(levels.size());
  auto level = [&](int p, std::size_t k) -> const Subspace& {
    if (p <= first) return full_[k];
    if (p >= last) return zero_[k];
    return levels[static_cast<std::size_t>(p - p_first)][k];
  };
  for (int p = first; p < last; ++p) {
    for (std::size_t k = 0; k < length; ++k) {
      if (!level(p, k).contains(level(p + 1, k))) {
        throw InvariantViolation("filtration: F^" + std::to_string(p + 1) + " K^" + std::to_string(lo + static_cast<int>(k)) +
                                 " is not contained in F^" + std::to_string(p));
      }
    }
  }
  std::size_t total = 0;
  for (auto x : dims) total += x;
  if (total == 0) {
    p_low_ = p_high_ = p_first;
  } else {
    auto all_full = [&](int p) {
      for (std::size_t k = 0; k < length; ++k)
        if (level(p, k).dim() != dims[k]) return false;
      return true;
    };
    auto all_zero = [&](int p) {
      for (std::size_t k = 0; k < length; ++k)
        if (level(p, k).dim() != 0) return false;
      return true;
    };
    p_low_ = first;
    while (p_low_ + 1 <= last && all_full(p_low_ + 1)) ++p_low_;
    p_high_ = last;
    while (p_high_ - 1 >= first && all_zero(p_high_ - 1)) --p_high_;
  }
  for (int p = p_low_; p <= p_high_; ++p) {
    std::vector<Subspace> row;
    for (std::size_t k = 0; k < length; ++k) row.push_back(level(p, k));
    levels_.push_back(std::move(row));
  }
}

const Subspace& Filtration::at(int p, int n) const {
  if (n < lo_ || n > hi_) return empty_;
  const auto k = static_cast<std::size_t>(n - lo_);
  if (p < p_low_) return full_[k];
  if (p >= p_high_) return zero_[k];
  return levels_[static_cast<std::size_t>(p - p_low_)][k];
}

FilteredComplex::FilteredComplex(CochainComplex complex, Filtration filtration)
    : complex_(std::move(complex)), filtration_(std::move(filtration)) {
  for (int n = complex_.lo(); n <= complex_.hi(); ++n) {
    if (filtration_.at(filtration_.p_low() - 1, n).ambient_dim() != complex_.dim(n)) {
      throw InvariantViolation("filtered complex: filtration of degree " + std::to_string(n) + " has the wrong ambient dimension");
    }
  }
  for (int p = filtration_.p_low(); p < filtration_.p_high(); ++p) {
    for (int n = complex_.lo(); n < complex_.hi(); ++n) {
      const Matrix d = complex_.d(n);
      const Subspace& target = filtration_.at(p, n + 1);
      for (const auto& v : filtration_.at(p, n).vectors()) {
        Vector dv = d.apply(v);
        if (!target.contains(dv)) {
          throw InvariantViolation("filtered complex: d^" + std::to_string(n) + " maps " + format_vector(v) + " in F^" +
                                   std::to_string(p) + " K^" + std::to_string(n) + " to " + format_vector(dv) +
                                   ", outside F^" + std::to_string(p) + " K^" + std::to_string(n + 1));
        }
      }
    }
  }
}

Filtration bete_filtration(const CochainComplex& k) {
  std::vector<std::size_t> dims;
  for (int n = k.lo(); n <= k.hi(); ++n) dims.push_back(k.dim(n));
  std::vector<std::vector<Subspace>> levels;
  for (int p = k.lo(); p <= k.hi() + 1; ++p) {
    std::vector<Subspace> row;
    for (int n = k.lo(); n <= k.hi(); ++n) row.push_back(n >= p ? Subspace::full(k.dim(n)) : Subspace::zero(k.dim(n)));
    levels.push_back(std::move(row));
  }
  return Filtration(k.lo(), k.hi(), dims, k.lo(), std::move(levels));
}

Filtration trivial_filtration(const CochainComplex& k) {
  std::vector<std::size_t> dims;
  std::vector<Subspace> row;
  for (int n = k.lo(); n <= k.hi(); ++n) {
    dims.push_back(k.dim(n));
    row.push_back(Subspace::full(k.dim(n)));
  }
  return Filtration(k.lo(), k.hi(), dims, 0, {row});
}

Subquotient graded_space(const FilteredComplex& fk, int p, int n) {
  return Subquotient(fk.level(p, n), fk.level(p + 1, n));
}

CochainComplex graded_piece(const FilteredComplex& fk, int p) {
  const CochainComplex& k = fk.complex();
  std::vector<Subquotient> spaces;
  std::vector<std::size_t> dims;
  for (int n = k.lo(); n <= k.hi(); ++n) {
    spaces.push_back(graded_space(fk, p, n));
    dims.push_back(spaces.back().dim());
  }
  std::vector<Matrix> d;
  for (int n = k.lo(); n < k.hi(); ++n) {
    const auto i = static_cast<std::size_t>(n - k.lo());
    d.push_back(induced_map(k.d(n), spaces[i], spaces[i + 1]));
  }
  return CochainComplex(k.lo(), k.hi(), std::move(dims), std::move(d));
}

}  // namespace sseq
