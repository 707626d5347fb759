#pragma once

// Model second pages E₂^{p,q} = H^p(L, Ω^q) for tori, projective spaces and
// their products, the obstruction-class d₂, and E₂ shape tables.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sseq/bidegree.hpp"
#include "sseq/lefschetz.hpp"
#include "sseq/multalg.hpp"

namespace sseq {

struct VarietyModel {
  std::string name;
  PolarizedAlgebra algebra;
  /// Generators modelling H⁰(Ω¹), bidegree (0,1).
  std::vector<std::size_t> h0_omega1;
  /// Generators modelling H¹(O), bidegree (1,0).
  std::vector<std::size_t> h1_O;
};

class HodgeDiamond {
 public:
  /// Throws InvariantViolation unless h^{p,q} = h^{q,p} = h^{n−p,n−q} and
  /// h^{0,0} = h^{n,n} = 1.
  HodgeDiamond(int n, std::vector<std::vector<std::size_t>> h);

  int n() const { return n_; }
  std::size_t at(int p, int q) const;

 private:
  int n_;
  std::vector<std::vector<std::size_t>> h_;
};

HodgeDiamond hodge_diamond(const VarietyModel& m);

/// Exterior algebra on ξ₁, η₁, …, ξ_n, η_n with ξ in (0,1), η in (1,0),
/// ω = Σ ξᵢηᵢ and ∫ ξ₁η₁⋯ξ_nη_n = 1. Requires 1 ≤ n ≤ 4.
VarietyModel torus_model(int n);
/// Q[w]/(w^{n+1}) with w in (1,1), ω = w, ∫ w^n = 1. Requires 1 ≤ n ≤ 16.
VarietyModel projective_space_model(int n);
/// Graded tensor product with Koszul signs; ω = ω₁⊗1 + 1⊗ω₂, ∫ = ∫₁ ⊗ ∫₂.
VarietyModel product_model(const VarietyModel& a, const VarietyModel& b);

/// Throws InvariantViolation unless the diamond is valid and hard Lefschetz holds.
void validate_model(const VarietyModel& m);

/// dim E₂^{p,q} for 0 ≤ p, q ≤ n (zeros included).
std::map<Bidegree, std::size_t> lagrangian_e2_table(const VarietyModel& m);

/// dim Ext^k = Σ_{p+q=k} dim E₂^{p,q}, k = 0..2n. Only the degenerate branch
/// exists; degenerate = false throws Unsupported.
std::vector<std::size_t> ext_dimensions(const VarietyModel& m, bool degenerate = true);

struct LciTable {
  int codim = 0;
  std::map<Bidegree, std::size_t> table;
  /// The Yoneda product is exterior multiplication in q.
  std::string product = "exterior";
};

/// E₂ shape for an lci embedding of codimension c from user-supplied
/// dims of H^p(∧^q N ⊗ …). Entries with q outside [0, c] must vanish.
LciTable lci_e2_table(int c, const std::map<Bidegree, std::size_t>& input_dims);

/// Target bidegree of the Yoneda product of two cells, or nullopt when the
/// exterior degree exceeds c.
std::optional<Bidegree> lci_product_target(const LciTable& t, Bidegree a, Bidegree b);

struct ObstructionDatum {
  /// Images of (0,1)-generators, keyed by basis index.
  std::map<std::size_t, Vector> alpha;
  Scalar scale = 1;
};

/// Bidegree-(2,−1) derivation sending each (0,1)-generator g to scale·α(g)
/// and every other generator to zero. Models generated in degree 1 use the
/// Leibniz extension; others must have the derivation determined uniquely by
/// these generator values.
Derivation d2_from_alpha(const VarietyModel& m, const ObstructionDatum& od);

}  // namespace sseq
