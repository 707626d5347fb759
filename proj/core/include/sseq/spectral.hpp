#pragma once

// Spectral sequence of a filtered complex. Every page cell is stored as a
// subquotient of the original space K^{p+q}, together with representatives
// that are genuine r-cycles, so induced differentials are computed directly
// in the filtered complex.

#include <cstddef>
#include <deque>
#include <map>
#include <memory>
#include <vector>

#include "sseq/bidegree.hpp"
#include "sseq/exactla.hpp"
#include "sseq/filtered.hpp"

namespace sseq {

struct PageCell {
  Subquotient space;
  /// reps[j] ≡ space.complement()[j] modulo the denominator, lies in F^p and
  /// has d(reps[j]) ∈ F^{p+r}.
  std::vector<Vector> reps;
};

class Page {
 public:
  Page() = default;
  Page(std::shared_ptr<const FilteredComplex> source, int r, std::map<Bidegree, PageCell> cells,
       std::map<Bidegree, Matrix> differentials);

  int r() const { return r_; }
  const FilteredComplex& source() const { return *source_; }
  const std::shared_ptr<const FilteredComplex>& source_ptr() const { return source_; }

  const std::map<Bidegree, PageCell>& cells() const { return cells_; }
  /// nullptr outside the support.
  const PageCell* cell(Bidegree b) const;
  std::size_t dim(Bidegree b) const;

  /// Target of d_r out of b: (p + r, q − r + 1).
  Bidegree target(Bidegree b) const { return {b.p + r_, b.q - r_ + 1}; }
  /// d_r^{p,q}; a zero matrix of the right shape when either end is empty.
  Matrix differential(Bidegree b) const;
  bool differentials_vanish() const;

  /// Nonzero cell dimensions.
  std::map<Bidegree, std::size_t> dims() const;

 private:
  std::shared_ptr<const FilteredComplex> source_;
  int r_ = 1;
  std::map<Bidegree, PageCell> cells_;
  std::map<Bidegree, Matrix> d_;
};

/// E_1^{p,q} = H^{p+q}(Gr^p K), lifted into K^{p+q}, with d_1 induced by d.
Page first_page(std::shared_ptr<const FilteredComplex> fk);

/// E_{r+1} = H(E_r, d_r), with d_{r+1} computed from corrected representative
/// lifts. Throws InternalMismatch if a lift cannot be found.
Page turn_page(const Page& page);

/// Z_r/B_r from the closed cycle/boundary formulas:
///   Z = F^p K^n ∩ d^{-1} F^{p+r} K^{n+1}
///   B = (F^{p+1} K^n ∩ d^{-1} F^{p+r} K^{n+1}) + d(F^{p−r+1} K^{n−1} ∩ d^{-1} F^p K^n)
Subquotient page_direct(const FilteredComplex& fk, int r, int p, int q);

/// Whole page from page_direct with differentials induced by d.
Page direct_page(std::shared_ptr<const FilteredComplex> fk, int r);

/// Isomorphism from a page_direct cell to the corresponding cell of an
/// iterated page, induced by the identity of K^{p+q}.
Matrix page_identification(const Subquotient& direct, const Subquotient& iterated);

/// Cells (p, n − p) for n in the complex range and p in the filtration range.
std::vector<Bidegree> page_support(const FilteredComplex& fk);

/// Lazily extended sequence of pages. page() mutates the cache and must be
/// confined to one thread.
class SpectralSequence {
 public:
  explicit SpectralSequence(FilteredComplex fk);
  explicit SpectralSequence(std::shared_ptr<const FilteredComplex> fk);

  const FilteredComplex& source() const { return *source_; }
  const Page& page(int r);
  /// First page index from which every differential vanishes.
  int stable_page() const;
  const Page& e_infinity() { return page(stable_page()); }
  /// True iff d_s = 0 for every s ≥ r.
  bool is_degenerate_at(int r);

 private:
  std::shared_ptr<const FilteredComplex> source_;
  std::deque<Page> pages_;
};

struct AbutmentRow {
  int degree = 0;
  std::size_t e_infinity = 0;
  std::size_t cohomology = 0;
};

struct AbutmentReport {
  int stable_page = 1;
  std::vector<AbutmentRow> rows;
  std::map<Bidegree, std::size_t> e_infinity;
};

/// Compares Σ_{p+q=n} dim E_∞^{p,q} with dim H^n(K); throws InternalMismatch
/// on any disagreement.
AbutmentReport e_infinity_compare(const FilteredComplex& fk);

/// Deligne's shifted filtration (Dec F)^p K^n = F^{p+n} K^n ∩ d^{-1} F^{p+n+1} K^{n+1}.
/// Its E_r^{p,q} matches E_{r+1}^{2p+q,−p} of the input.
FilteredComplex decalage(const FilteredComplex& fk);

}  // namespace sseq
