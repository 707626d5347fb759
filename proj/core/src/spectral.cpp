#include "sseq/spectral.hpp"

#include <string>
#include <utility>

#include "sseq/error.hpp"

namespace sseq {

namespace {

std::string cell_name(int r, Bidegree b) { return "E_" + std::to_string(r) + "^{" + to_string(b) + "}"; }

Vector combine(const std::vector<Vector>& vectors, std::span<const Scalar> coeffs, std::size_t ambient) {
  Vector out(ambient);
  for (std::size_t j = 0; j < vectors.size(); ++j) {
    if (sgn(coeffs[j]) == 0) continue;
    for (std::size_t i = 0; i < ambient; ++i)
      if (sgn(vectors[j][i]) != 0) out[i] += coeffs[j] * vectors[j][i];
  }
  return out;
}

// d_r out of every cell, from the stored representatives.
std::map<Bidegree, Matrix> differentials_from_reps(const FilteredComplex& fk, int r,
                                                   const std::map<Bidegree, PageCell>& cells) {
  std::map<Bidegree, Matrix> out;
  for (const auto& [b, cell] : cells) {
    Bidegree t{b.p + r, b.q - r + 1};
    auto it = cells.find(t);
    if (it == cells.end() || cell.space.dim() == 0 || it->second.space.dim() == 0) continue;
    const Matrix d = fk.complex().d(b.total());
    Matrix m(it->second.space.dim(), cell.space.dim());
    for (std::size_t j = 0; j < cell.reps.size(); ++j) {
      Vector image = d.apply(cell.reps[j]);
      auto c = it->second.space.try_coordinates(image);
      if (!c) {
        throw InternalMismatch("representative-lift failure: d of representative " + format_vector(cell.reps[j]) +
                               " of " + cell_name(r, b) + " is not a cycle of " + cell_name(r, t));
      }
      for (std::size_t i = 0; i < m.rows(); ++i) m(i, j) = (*c)[i];
    }
    out.emplace(b, std::move(m));
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------- Page

Page::Page(std::shared_ptr<const FilteredComplex> source, int r, std::map<Bidegree, PageCell> cells,
           std::map<Bidegree, Matrix> differentials)
    : source_(std::move(source)), r_(r), cells_(std::move(cells)), d_(std::move(differentials)) {}

const PageCell* Page::cell(Bidegree b) const {
  auto it = cells_.find(b);
  return it == cells_.end() ? nullptr : &it->second;
}

std::size_t Page::dim(Bidegree b) const {
  const PageCell* c = cell(b);
  return c ? c->space.dim() : 0;
}

Matrix Page::differential(Bidegree b) const {
  auto it = d_.find(b);
  if (it != d_.end()) return it->second;
  return Matrix(dim(target(b)), dim(b));
}

bool Page::differentials_vanish() const {
  for (const auto& [b, m] : d_)
    if (!m.is_zero()) return false;
  return true;
}

std::map<Bidegree, std::size_t> Page::dims() const {
  std::map<Bidegree, std::size_t> out;
  for (const auto& [b, c] : cells_)
    if (c.space.dim() > 0) out[b] = c.space.dim();
  return out;
}

std::vector<Bidegree> page_support(const FilteredComplex& fk) {
  std::vector<Bidegree> out;
  const auto& k = fk.complex();
  const auto& f = fk.filtration();
  for (int p = f.p_low(); p < f.p_high(); ++p)
    for (int n = k.lo(); n <= k.hi(); ++n) out.push_back({p, n - p});
  return out;
}

// ---------------------------------------------------------------- first page

Page first_page(std::shared_ptr<const FilteredComplex> fk) {
  const auto& k = fk->complex();
  std::map<Bidegree, PageCell> cells;
  for (int p = fk->filtration().p_low(); p < fk->filtration().p_high(); ++p) {
    CochainComplex gr = graded_piece(*fk, p);
    for (int n = k.lo(); n <= k.hi(); ++n) {
      const std::size_t ambient = k.dim(n);
      Subquotient gr_space = graded_space(*fk, p, n);
      Subquotient h = cohomology(gr, n);
      std::vector<Vector> cycles = fk->level(p + 1, n).vectors();
      std::vector<Vector> boundaries = cycles;
      if (gr_space.dim() > 0) {
        for (const auto& z : h.numerator().vectors()) cycles.push_back(gr_space.lift(z));
        for (const auto& b : h.denominator().vectors()) boundaries.push_back(gr_space.lift(b));
      }
      Subquotient space(Subspace::span(cycles, ambient), Subspace::span(boundaries, ambient));
      PageCell cell{space, space.complement()};
      cells.emplace(Bidegree{p, n - p}, std::move(cell));
    }
  }
  auto d = differentials_from_reps(*fk, 1, cells);
  return Page(std::move(fk), 1, std::move(cells), std::move(d));
}

// ---------------------------------------------------------------- turn_page

Page turn_page(const Page& page) {
  const FilteredComplex& fk = page.source();
  const int r = page.r();
  std::map<Bidegree, PageCell> next;
  for (const auto& [b, cell] : page.cells()) {
    const int n = b.total();
    const std::size_t ambient = fk.complex().dim(n);
    const Subquotient& old = cell.space;

    std::vector<Vector> cycles = old.denominator().vectors();
    std::vector<Vector> boundaries = cycles;
    if (old.dim() > 0) {
      for (const auto& kv : nullspace(page.differential(b))) cycles.push_back(old.lift(kv));
      Bidegree src{b.p - r, b.q + r - 1};
      Matrix incoming = page.differential(src);
      for (std::size_t j = 0; j < incoming.cols(); ++j) boundaries.push_back(old.lift(incoming.column(j)));
    }
    Subspace z = Subspace::span(cycles, ambient);
    Subspace bd = Subspace::span(boundaries, ambient);
    if (!z.contains(bd)) {
      throw InternalMismatch("turn_page: image of d_" + std::to_string(r) + " is not inside its kernel at " + cell_name(r, b));
    }
    Subquotient space(std::move(z), std::move(bd));

    // Correct the old representatives so that d(rep) ∈ F^{p+r+1}: subtract
    // w ∈ F^{p+1} with d w ≡ d rep modulo F^{p+r+1}.
    std::vector<Vector> reps;
    if (space.dim() > 0) {
      const Matrix d = fk.complex().d(n);
      const Subspace& deeper = fk.level(b.p + r + 1, n + 1);
      const std::vector<Vector>& w_basis = fk.level(b.p + 1, n).vectors();
      std::vector<Vector> reduced_dw;
      reduced_dw.reserve(w_basis.size());
      for (const auto& w : w_basis) reduced_dw.push_back(deeper.reduce(d.apply(w)));
      Matrix system = Matrix::from_columns(reduced_dw, fk.complex().dim(n + 1));
      for (const auto& c : space.complement()) {
        Vector old_coords = old.coordinates(c);
        Vector rep = combine(cell.reps, old_coords, ambient);
        Vector target = deeper.reduce(d.apply(rep));
        if (!is_zero(target)) {
          auto x = solve(system, target);
          if (!x) {
            throw InternalMismatch("representative-lift failure at " + cell_name(r + 1, b) + " for class " +
                                   format_vector(c));
          }
          Vector w = combine(w_basis, *x, ambient);
          for (std::size_t i = 0; i < ambient; ++i) rep[i] -= w[i];
        }
        reps.push_back(std::move(rep));
      }
    }
    next.emplace(b, PageCell{std::move(space), std::move(reps)});
  }
  auto d = differentials_from_reps(fk, r + 1, next);
  return Page(page.source_ptr(), r + 1, std::move(next), std::move(d));
}

// ---------------------------------------------------------------- direct formula

Subquotient page_direct(const FilteredComplex& fk, int r, int p, int q) {
  if (r < 1) throw PreconditionError("page_direct: page index must be at least 1");
  const int n = p + q;
  const auto& k = fk.complex();
  const Matrix d = k.d(n);
  const Matrix d_prev = k.d(n - 1);
  Subspace reach = preimage(d, fk.level(p + r, n + 1));
  Subspace z = intersect(fk.level(p, n), reach);
  Subspace lower = intersect(fk.level(p + 1, n), reach);
  Subspace sources = intersect(fk.level(p - r + 1, n - 1), preimage(d_prev, fk.level(p, n)));
  Subspace b = lower + image(d_prev, sources);
  return Subquotient(std::move(z), std::move(b));
}

Page direct_page(std::shared_ptr<const FilteredComplex> fk, int r) {
  std::map<Bidegree, PageCell> cells;
  for (Bidegree b : page_support(*fk)) {
    Subquotient s = page_direct(*fk, r, b.p, b.q);
    std::vector<Vector> reps = s.complement();
    cells.emplace(b, PageCell{std::move(s), std::move(reps)});
  }
  std::map<Bidegree, Matrix> d;
  for (const auto& [b, cell] : cells) {
    auto it = cells.find(Bidegree{b.p + r, b.q - r + 1});
    if (it == cells.end() || cell.space.dim() == 0 || it->second.space.dim() == 0) continue;
    d.emplace(b, induced_map(fk->complex().d(b.total()), cell.space, it->second.space));
  }
  return Page(std::move(fk), r, std::move(cells), std::move(d));
}

Matrix page_identification(const Subquotient& direct, const Subquotient& iterated) {
  return induced_map(Matrix::identity(direct.ambient_dim()), direct, iterated);
}

// ---------------------------------------------------------------- SpectralSequence

SpectralSequence::SpectralSequence(FilteredComplex fk)
    : SpectralSequence(std::make_shared<const FilteredComplex>(std::move(fk))) {}

SpectralSequence::SpectralSequence(std::shared_ptr<const FilteredComplex> fk) : source_(std::move(fk)) {}

const Page& SpectralSequence::page(int r) {
  if (r < 1) throw PreconditionError("page index must be at least 1");
  if (pages_.empty()) pages_.push_back(first_page(source_));
  while (static_cast<int>(pages_.size()) < r) pages_.push_back(turn_page(pages_.back()));
  return pages_[static_cast<std::size_t>(r - 1)];
}

int SpectralSequence::stable_page() const { return source_->filtration().width() + 1; }

bool SpectralSequence::is_degenerate_at(int r) {
  for (int s = std::max(r, 1); s <= stable_page(); ++s)
    if (!page(s).differentials_vanish()) return false;
  return true;
}

AbutmentReport e_infinity_compare(const FilteredComplex& fk) {
  SpectralSequence ss(fk);
  AbutmentReport report;
  report.stable_page = ss.stable_page();
  const Page& inf = ss.e_infinity();
  report.e_infinity = inf.dims();
  const auto& k = fk.complex();
  std::string mismatch;
  for (int n = k.lo(); n <= k.hi(); ++n) {
    AbutmentRow row{n, 0, cohomology(k, n).dim()};
    for (const auto& [b, dim] : report.e_infinity)
      if (b.total() == n) row.e_infinity += dim;
    if (row.e_infinity != row.cohomology) {
      mismatch += " degree " + std::to_string(n) + ": E_inf " + std::to_string(row.e_infinity) + " vs H " +
                  std::to_string(row.cohomology) + ";";
    }
    report.rows.push_back(row);
  }
  if (!mismatch.empty()) throw InternalMismatch("abutment mismatch:" + mismatch);
  return report;
}

// ---------------------------------------------------------------- décalage

FilteredComplex decalage(const FilteredComplex& fk) {
  const auto& k = fk.complex();
  const auto& f = fk.filtration();
  std::vector<std::size_t> dims;
  for (int n = k.lo(); n <= k.hi(); ++n) dims.push_back(k.dim(n));
  const int p_first = f.p_low() - k.hi() - 1;
  const int p_last = f.p_high() - k.lo();
  std::vector<std::vector<Subspace>> levels;
  for (int p = p_first; p <= p_last; ++p) {
    std::vector<Subspace> row;
    for (int n = k.lo(); n <= k.hi(); ++n) {
      row.push_back(intersect(fk.level(p + n, n), preimage(k.d(n), fk.level(p + n + 1, n + 1))));
    }
    levels.push_back(std::move(row));
  }
  return FilteredComplex(k, Filtration(k.lo(), k.hi(), dims, p_first, std::move(levels)));
}

}  // namespace sseq
