#pragma once

// Polarized bigraded algebras: hard Lefschetz, primitive decomposition, the
// degree −1 vanishing observation, Serre-duality signs, and a step-by-step
// certifier for the Lefschetz-induction degeneration argument.

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sseq/bidegree.hpp"
#include "sseq/exactla.hpp"
#include "sseq/multalg.hpp"

namespace sseq {

/// Algebra with a Kähler-type class ω ∈ A^{1,1} and a linear functional ∫
/// supported on A^{n,n}. The constructor checks shapes only; the analytic
/// axioms are reported by check_polarization.
class PolarizedAlgebra {
 public:
  PolarizedAlgebra() = default;
  PolarizedAlgebra(std::shared_ptr<const BigradedAlgebra> algebra, Vector omega, Vector integral);

  const BigradedAlgebra& algebra() const { return *algebra_; }
  const std::shared_ptr<const BigradedAlgebra>& algebra_ptr() const { return algebra_; }
  int n() const { return algebra_->n(); }
  const Vector& omega() const { return omega_; }
  /// Coefficients of ∫ on the basis.
  const Vector& integral() const { return integral_; }
  Scalar integrate(const Vector& x) const;

  /// Multiplication by ω.
  const Matrix& lefschetz() const { return l_; }
  /// ω^k as an element.
  Vector omega_power(int k) const;

 private:
  std::shared_ptr<const BigradedAlgebra> algebra_;
  Vector omega_;
  Vector integral_;
  Matrix l_;
};

struct HardLefschetzReport {
  bool holds = true;
  /// Failing index found first when scanning i = n, n−1, …, 1.
  std::optional<int> first_failure;
  std::vector<int> failures;
};

/// L^i : A^{n−i} → A^{n+i} bijective for every i ≥ 0.
HardLefschetzReport verify_hard_lefschetz(const PolarizedAlgebra& pa);

/// H₀^{p,q} = ker L^{n−p−q+1} ∩ A^{p,q} for p + q ≤ n, as subspaces of the
/// whole algebra. Cells of total degree above n are absent (zero).
std::map<Bidegree, Subspace> primitive_subspaces(const PolarizedAlgebra& pa);

/// dim H₀^m for m = 0..2n.
std::vector<std::size_t> primitive_dims(const PolarizedAlgebra& pa);

struct PolarizationReport {
  bool holds = true;
  std::vector<std::string> failures;
};

/// Hard Lefschetz, Poincaré non-degeneracy on complementary bidegrees, and
/// non-degeneracy of (γ, β) ↦ ∫ ω^{n−m} γ β on H₀^{a,b} × H₀^{b,a}, m = a + b.
PolarizationReport check_polarization(const PolarizedAlgebra& pa);

/// Gram matrix of (γ, β) ↦ ∫ ω^{n−m} γ β for γ ∈ H₀^{a,b}, β ∈ H₀^{b,a}.
Matrix twisted_primitive_gram(const PolarizedAlgebra& pa, const std::map<Bidegree, Subspace>& prim, Bidegree cell);

/// d∘L − L∘d.
Matrix lefschetz_commutator(const PolarizedAlgebra& pa, const Derivation& d);

struct SplitCell {
  Bidegree source;
  /// Basis of H₀^source and, per basis vector α, the components
  /// d(α) = d°(α) + ω·d′(α) with d°(α) ∈ H₀^{t}, d′(α) ∈ H₀^{t − (1,1)}.
  std::vector<Vector> alpha;
  std::vector<Vector> d_circ;
  std::vector<Vector> d_prime;
};

/// Requires [d, L] = 0 (PreconditionError otherwise); throws
/// InvariantViolation naming α if some d(α) escapes H₀^t ⊕ L H₀^{t−(1,1)}.
std::map<Bidegree, SplitCell> split_differential(const PolarizedAlgebra& pa, const Derivation& d);

/// Dimension of the space of total-degree −1 maps D with D L = L D. The
/// system is solved one bidegree shift and one diagonal p − q at a time.
std::size_t deligne_vanishing(const PolarizedAlgebra& pa);

/// Σ_m b_m b_{m−1}: the dimension of all total-degree −1 maps.
std::size_t degree_minus_one_maps(const PolarizedAlgebra& pa);

struct SerreReport {
  bool holds = true;
  std::optional<std::pair<std::size_t, std::size_t>> witness;
  Scalar lhs;  // ∫ d(x) y
  Scalar rhs;  // −(−1)^{|d||x|} ∫ x d(y)
};

/// ∫ d(x) y = −(−1)^{|d||x|} ∫ x d(y) on all basis pairs of complementary
/// degree. Requires d to vanish on the top cell A^{n,n}.
SerreReport serre_sign_check(const PolarizedAlgebra& pa, const Derivation& d);

struct Witness {
  std::string summary;
  std::vector<std::pair<std::string, Vector>> vectors;
  std::optional<Bidegree> cell;
};

struct CertificateStep {
  int step = 0;
  std::string name;
  std::string statement;
  bool passed = false;
  std::optional<Witness> witness;
};

struct Certificate {
  std::vector<CertificateStep> steps;
  bool certified = false;
  std::optional<int> failed_step;
};

struct CertifyOptions {
  /// Additionally require d∘d = 0.
  bool require_square_zero = false;
};

/// Replays the Lefschetz-induction argument for d = 0 one exact check at a
/// time, stopping at the first failure:
///   1 d(ω) = 0
///   2 [d, L] = 0
///   3 d(H₀^{p,q}) ⊆ H₀^t ⊕ L H₀^{t−(1,1)}
///   4 d′ = 0 on every primitive cell
///   5 d = 0 on total degree n
///   6 downward induction through the twisted primitive pairing
///   7 d = 0
/// Requires d to satisfy Leibniz (PreconditionError otherwise).
Certificate degeneration_certify(const PolarizedAlgebra& pa, const Derivation& d, CertifyOptions options = {});

}  // namespace sseq
