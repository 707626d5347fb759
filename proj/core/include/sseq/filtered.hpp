#pragma once

// Bounded cochain complexes of finite-dimensional Q-vector spaces, canonical
// truncations, and finite decreasing filtrations.

#include <cstddef>
#include <vector>

#include "sseq/exactla.hpp"

namespace sseq {

/// K^lo → … → K^hi with differentials of degree +1. Outside [lo, hi] every
/// space is zero.
class CochainComplex {
 public:
  CochainComplex() = default;
  /// differentials[k] is d^{lo+k} : K^{lo+k} → K^{lo+k+1}, for k < hi − lo.
  /// Throws InvariantViolation on shape mismatch or d∘d ≠ 0.
  CochainComplex(int lo, int hi, std::vector<std::size_t> dims, std::vector<Matrix> differentials);

  int lo() const { return lo_; }
  int hi() const { return hi_; }
  bool in_range(int n) const { return n >= lo_ && n <= hi_; }
  std::size_t dim(int n) const;
  /// d^n, of shape dim(n+1) × dim(n); zero outside the range.
  Matrix d(int n) const;

  std::size_t total_dim() const;

 private:
  int lo_ = 0;
  int hi_ = -1;
  std::vector<std::size_t> dims_;
  std::vector<Matrix> d_;
};

/// ker d^n / im d^{n−1} as a subquotient of K^n (zero space outside the range).
Subquotient cohomology(const CochainComplex& k, int n);

/// τ≤p: K^i for i < p, ker d^p at p, zero above. Degree p uses coordinates in
/// the canonical basis of ker d^p.
CochainComplex truncate_below(const CochainComplex& k, int p);
/// τ≥p: zero below p, K^p / im d^{p−1} at p (complement coordinates), K^i above.
CochainComplex truncate_above(const CochainComplex& k, int p);
/// τ^{[p−1,p]} = τ≥p−1 τ≤p.
CochainComplex window(const CochainComplex& k, int p);

/// Per-degree matrices of the inclusion τ≤p K → K.
std::vector<Matrix> truncate_below_inclusion(const CochainComplex& k, int p);
/// Per-degree matrices of the projection K → τ≥p K.
std::vector<Matrix> truncate_above_projection(const CochainComplex& k, int p);

/// Matrix of H^n(source) → H^n(target) induced by a chain map component f^n.
Matrix induced_on_cohomology(const CochainComplex& source, const CochainComplex& target, int n, const Matrix& f);

/// Finite decreasing filtration F^p K^n. Levels below p_low() are the whole
/// space, levels at or above p_high() are zero.
class Filtration {
 public:
  Filtration() = default;
  /// levels[i][n − lo] is F^{p_first + i} K^n. Levels before the table are
  /// taken as the whole space and after it as zero; the stored range is then
  /// tightened. Throws InvariantViolation if not decreasing.
  Filtration(int lo, int hi, const std::vector<std::size_t>& dims, int p_first,
             std::vector<std::vector<Subspace>> levels);

  const Subspace& at(int p, int n) const;

  int p_low() const { return p_low_; }
  int p_high() const { return p_high_; }
  int width() const { return p_high_ - p_low_; }

 private:
  int lo_ = 0;
  int hi_ = -1;
  int p_low_ = 0;
  int p_high_ = 0;
  std::vector<std::vector<Subspace>> levels_;  // p in [p_low, p_high]
  std::vector<Subspace> full_;
  std::vector<Subspace> zero_;
  Subspace empty_;
};

class FilteredComplex {
 public:
  FilteredComplex() = default;
  /// Throws InvariantViolation with a witness unless d(F^p) ⊆ F^p everywhere
  /// and the filtration spaces match the complex.
  FilteredComplex(CochainComplex complex, Filtration filtration);

  const CochainComplex& complex() const { return complex_; }
  const Filtration& filtration() const { return filtration_; }
  const Subspace& level(int p, int n) const { return filtration_.at(p, n); }

 private:
  CochainComplex complex_;
  Filtration filtration_;
};

/// F^p K^n = K^n for n ≥ p, zero below (the stupid filtration).
Filtration bete_filtration(const CochainComplex& k);
/// F^0 = K, F^1 = 0.
Filtration trivial_filtration(const CochainComplex& k);

/// F^p K^n / F^{p+1} K^n as a subquotient of K^n.
Subquotient graded_space(const FilteredComplex& fk, int p, int n);
/// Gr^p_F K with induced differentials.
CochainComplex graded_piece(const FilteredComplex& fk, int p);

}  // namespace sseq
