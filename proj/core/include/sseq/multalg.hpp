#pragma once

// Bigraded graded-commutative algebras given by structure constants,
// graded derivations, and pairings of spectral sequences.

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sseq/bidegree.hpp"
#include "sseq/exactla.hpp"
#include "sseq/spectral.hpp"

namespace sseq {

struct BasisElement {
  std::string name;
  Bidegree degree;
};

/// Sparse vector entry (basis index, coefficient).
using Term = std::pair<std::size_t, Scalar>;
using SparseVector = std::vector<Term>;

/// Finite-dimensional bigraded algebra with a named homogeneous basis. The
/// sign rule is Koszul on the total degree p + q.
class BigradedAlgebra {
 public:
  BigradedAlgebra() = default;
  /// products[{i, j}] = e_i · e_j; absent pairs multiply to zero. Throws
  /// InvariantViolation with a witness unless products are bihomogeneous,
  /// associative, graded-commutative and `unit` is a two-sided unit.
  BigradedAlgebra(int n, std::vector<BasisElement> basis, std::map<std::pair<std::size_t, std::size_t>, Vector> products,
                  Vector unit);

  int n() const { return n_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<BasisElement>& basis() const { return basis_; }
  const BasisElement& element(std::size_t i) const { return basis_[i]; }
  Bidegree bidegree(std::size_t i) const { return basis_[i].degree; }
  int degree(std::size_t i) const { return basis_[i].degree.total(); }
  const Vector& unit() const { return unit_; }
  std::optional<std::size_t> find(const std::string& name) const;

  /// e_i · e_j as a sparse vector.
  const SparseVector& product(std::size_t i, std::size_t j) const { return table_[i * basis_.size() + j]; }
  Vector multiply(const Vector& x, const Vector& y) const;
  /// Matrix of y ↦ x·y.
  Matrix left_multiplication(const Vector& x) const;

  /// Basis indices in a bidegree / total degree, ascending.
  std::vector<std::size_t> indices(Bidegree b) const;
  std::vector<std::size_t> indices_in_degree(int m) const;
  /// Nonzero cell dimensions.
  std::map<Bidegree, std::size_t> cell_dims() const;
  /// b_m for m = 0..2n.
  std::vector<std::size_t> betti() const;

  /// Bidegree of a nonzero homogeneous vector; nullopt for zero or mixed vectors.
  std::optional<Bidegree> homogeneous_degree(const Vector& v) const;
  /// Human-readable "2*xi1*eta1 - 1/2*xi2" form.
  std::string format(const Vector& v) const;

 private:
  int n_ = 0;
  std::vector<BasisElement> basis_;
  std::vector<SparseVector> table_;
  Vector unit_;
};

/// Homogeneous linear endomorphism of bidegree `shift`, stored as a matrix in
/// the algebra basis. Leibniz is not assumed; see verify_leibniz.
class Derivation {
 public:
  Derivation() = default;
  /// Throws InvariantViolation if the matrix is not square of the algebra
  /// dimension or does not shift bidegrees by `shift`.
  Derivation(std::shared_ptr<const BigradedAlgebra> algebra, Bidegree shift, Matrix values);

  static Derivation zero(std::shared_ptr<const BigradedAlgebra> algebra, Bidegree shift);

  const BigradedAlgebra& algebra() const { return *algebra_; }
  const std::shared_ptr<const BigradedAlgebra>& algebra_ptr() const { return algebra_; }
  Bidegree shift() const { return shift_; }
  int degree() const { return shift_.total(); }
  const Matrix& matrix() const { return values_; }
  Vector operator()(const Vector& x) const { return values_.apply(x); }
  Vector image(std::size_t i) const { return values_.column(i); }
  bool is_zero() const { return values_.is_zero(); }

  Derivation scaled(const Scalar& s) const { return Derivation(algebra_, shift_, values_.scaled(s)); }

 private:
  std::shared_ptr<const BigradedAlgebra> algebra_;
  Bidegree shift_;
  Matrix values_;
};

struct LeibnizReport {
  bool holds = true;
  /// First basis pair (i, j) where d(e_i e_j) ≠ d(e_i) e_j + (−1)^{|d||e_i|} e_i d(e_j).
  std::optional<std::pair<std::size_t, std::size_t>> witness;
  Vector lhs;
  Vector rhs;
};

LeibnizReport verify_leibniz(const Derivation& d);

/// True iff the algebra is spanned by the unit and products of degree-1 elements.
bool generated_in_degree_one(const BigradedAlgebra& a);

/// Unique Leibniz extension of the given images of degree-1 basis elements
/// (missing generators map to zero). Throws PreconditionError if the algebra
/// is not generated in degree 1 or an image has the wrong bidegree, and
/// InvariantViolation naming a relation the images violate.
Derivation derivation_extend(std::shared_ptr<const BigradedAlgebra> a, Bidegree shift,
                             const std::map<std::size_t, Vector>& generator_images);

/// Basis of the space of all derivations of the given bidegree.
std::vector<Derivation> derivation_space(std::shared_ptr<const BigradedAlgebra> a, Bidegree shift);

// ------------------------------------------------------------------ pairings

/// ∪_r on one page. For cells (b1, b2) of the two factors the matrix has
/// dim E_r^{b1+b2} rows and dim1 · dim2 columns; column i · dim2 + j holds
/// x_i ∪ y_j.
struct PagePairing {
  int r = 1;
  std::map<std::pair<Bidegree, Bidegree>, Matrix> maps;

  /// x ∪ y in cell coordinates (zero-length when the target is empty).
  Vector apply(Bidegree b1, const Vector& x, Bidegree b2, const Vector& y) const;
};

/// Chain-level product K'^a × K''^b → K^{a+b} on coordinate vectors.
using ChainProduct = std::function<Vector(int, const Vector&, int, const Vector&)>;

/// Pairing E' ⊗ E'' → E of spectral sequences, extended page by page.
class SSPairing {
 public:
  SSPairing(SpectralSequence& left, SpectralSequence& right, SpectralSequence& target, PagePairing first);

  SpectralSequence& left() const { return *left_; }
  SpectralSequence& right() const { return *right_; }
  SpectralSequence& target() const { return *target_; }

  /// ∪_r, computing intermediate pages with induced_pairing.
  const PagePairing& at(int r);

 private:
  SpectralSequence* left_;
  SpectralSequence* right_;
  SpectralSequence* target_;
  std::vector<PagePairing> pages_;
};

/// Throws InvariantViolation with a witness pair unless
/// d_r(x ∪ y) = d_r x ∪ y + (−1)^{p+q} x ∪ d_r y on all cell basis pairs.
void check_pairing_leibniz(SSPairing& pairing, const PagePairing& cup);

/// ∪_{r+1} induced by ∪_r on cohomology of d_r. Checks the Leibniz
/// compatibility of ∪_r and that ker × im and im × ker land in im.
PagePairing induced_pairing(SSPairing& pairing, int r);

/// ∪_r computed directly from a chain-level product applied to page
/// representatives. `mu` must respect the filtrations and satisfy Leibniz.
PagePairing product_pairing(SpectralSequence& left, SpectralSequence& right, SpectralSequence& target,
                            const ChainProduct& mu, int r);

}  // namespace sseq
