#include "sseq/geometry.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <memory>

#include "sseq/error.hpp"

namespace sseq {

// ------------------------------------------------------------------ Hodge diamond

HodgeDiamond::HodgeDiamond(int n, std::vector<std::vector<std::size_t>> h) : n_(n), h_(std::move(h)) {
  const auto size = static_cast<std::size_t>(n + 1);
  if (n < 0 || h_.size() != size) throw InvariantViolation("hodge diamond: expected " + std::to_string(size) + " rows");
  for (const auto& row : h_)
    if (row.size() != size) throw InvariantViolation("hodge diamond: rows must have length " + std::to_string(size));
  for (int p = 0; p <= n; ++p) {
    for (int q = 0; q <= n; ++q) {
      if (at(p, q) != at(q, p))
        throw InvariantViolation("hodge diamond: h^{" + to_string({p, q}) + "} != h^{" + to_string({q, p}) + "}");
      if (at(p, q) != at(n - p, n - q))
        throw InvariantViolation("hodge diamond: h^{" + to_string({p, q}) + "} != h^{" + to_string({n - p, n - q}) + "}");
    }
  }
  if (at(0, 0) != 1 || at(n, n) != 1) throw InvariantViolation("hodge diamond: h^{0,0} and h^{n,n} must be 1");
}

std::size_t HodgeDiamond::at(int p, int q) const {
  if (p < 0 || q < 0 || p > n_ || q > n_) return 0;
  return h_[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)];
}

HodgeDiamond hodge_diamond(const VarietyModel& m) {
  const BigradedAlgebra& a = m.algebra.algebra();
  const int n = a.n();
  std::vector<std::vector<std::size_t>> h(static_cast<std::size_t>(n + 1), std::vector<std::size_t>(static_cast<std::size_t>(n + 1)));
  for (const auto& [b, count] : a.cell_dims()) {
    if (b.p < 0 || b.q < 0 || b.p > n || b.q > n)
      throw InvariantViolation("model " + m.name + ": cell " + to_string(b) + " lies outside the diamond");
    h[static_cast<std::size_t>(b.p)][static_cast<std::size_t>(b.q)] = count;
  }
  return HodgeDiamond(n, std::move(h));
}

void validate_model(const VarietyModel& m) {
  hodge_diamond(m);
  HardLefschetzReport hl = verify_hard_lefschetz(m.algebra);
  if (!hl.holds) {
    throw InvariantViolation("model " + m.name + ": hard Lefschetz fails at i = " + std::to_string(*hl.first_failure));
  }
  const BigradedAlgebra& a = m.algebra.algebra();
  for (std::size_t g : m.h0_omega1)
    if (g >= a.dim() || a.bidegree(g) != Bidegree{0, 1})
      throw InvariantViolation("model " + m.name + ": role h0_omega1 names a basis element outside A^{0,1}");
  for (std::size_t g : m.h1_O)
    if (g >= a.dim() || a.bidegree(g) != Bidegree{1, 0})
      throw InvariantViolation("model " + m.name + ": role h1_O names a basis element outside A^{1,0}");
}

// ------------------------------------------------------------------ builders

VarietyModel torus_model(int n) {
  if (n < 1 || n > 4) throw PreconditionError("torus: n must lie in [1, 4]");
  const int gens = 2 * n;
  std::vector<std::uint32_t> masks;
  for (std::uint32_t m = 0; m < (1u << gens); ++m) masks.push_back(m);
  std::stable_sort(masks.begin(), masks.end(),
                   [](std::uint32_t x, std::uint32_t y) { return std::popcount(x) < std::popcount(y); });
  std::vector<std::size_t> index_of(masks.size());
  for (std::size_t i = 0; i < masks.size(); ++i) index_of[masks[i]] = i;

  auto gen_name = [](int g) { return std::string(g % 2 == 0 ? "xi" : "eta") + std::to_string(g / 2 + 1); };
  std::vector<BasisElement> basis;
  for (std::uint32_t m : masks) {
    std::string name;
    Bidegree deg{0, 0};
    for (int g = 0; g < gens; ++g) {
      if (!(m >> g & 1u)) continue;
      if (!name.empty()) name += "*";
      name += gen_name(g);
      if (g % 2 == 0) ++deg.q; else ++deg.p;
    }
    basis.push_back({name.empty() ? "1" : name, deg});
  }

  const std::size_t dim = masks.size();
  std::map<std::pair<std::size_t, std::size_t>, Vector> products;
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      std::uint32_t a = masks[i], b = masks[j];
      if (a & b) continue;
      int inversions = 0;
      for (int g = 0; g < gens; ++g)
        if (b >> g & 1u) inversions += std::popcount(a >> (g + 1));
      Vector v(dim);
      v[index_of[a | b]] = inversions % 2 == 0 ? 1 : -1;
      products.emplace(std::make_pair(i, j), std::move(v));
    }
  }
  auto alg = std::make_shared<const BigradedAlgebra>(n, std::move(basis), std::move(products), unit_vector(dim, 0));
  Vector omega(dim);
  for (int i = 0; i < n; ++i) omega[index_of[3u << (2 * i)]] = 1;
  Vector integral = unit_vector(dim, index_of[(1u << gens) - 1]);

  VarietyModel m{"torus(" + std::to_string(n) + ")", PolarizedAlgebra(alg, omega, integral), {}, {}};
  for (int g = 0; g < gens; ++g) (g % 2 == 0 ? m.h0_omega1 : m.h1_O).push_back(index_of[1u << g]);
  validate_model(m);
  return m;
}

VarietyModel projective_space_model(int n) {
  if (n < 1 || n > 16) throw PreconditionError("projective space: n must lie in [1, 16]");
  const auto dim = static_cast<std::size_t>(n + 1);
  std::vector<BasisElement> basis;
  for (int k = 0; k <= n; ++k) basis.push_back({k == 0 ? "1" : k == 1 ? "w" : "w^" + std::to_string(k), {k, k}});
  std::map<std::pair<std::size_t, std::size_t>, Vector> products;
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; i + j < dim; ++j) products.emplace(std::make_pair(i, j), unit_vector(dim, i + j));
  auto alg = std::make_shared<const BigradedAlgebra>(n, std::move(basis), std::move(products), unit_vector(dim, 0));
  VarietyModel m{"pn(" + std::to_string(n) + ")", PolarizedAlgebra(alg, unit_vector(dim, 1), unit_vector(dim, dim - 1)),
                 {}, {}};
  validate_model(m);
  return m;
}

VarietyModel product_model(const VarietyModel& ma, const VarietyModel& mb) {
  const BigradedAlgebra& a = ma.algebra.algebra();
  const BigradedAlgebra& b = mb.algebra.algebra();
  const std::size_t da = a.dim(), db = b.dim();
  if (da * db > 256) throw PreconditionError("product: total dimension exceeds 256");
  auto unit_index = [](const BigradedAlgebra& x) -> std::size_t {
    for (std::size_t i = 0; i < x.dim(); ++i)
      if (x.unit() == unit_vector(x.dim(), i)) return i;
    throw PreconditionError("product: factor unit must be a basis element");
  };
  const std::size_t ua = unit_index(a), ub = unit_index(b);
  const std::size_t dim = da * db;
  auto idx = [db](std::size_t i, std::size_t j) { return i * db + j; };

  std::vector<BasisElement> basis;
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < db; ++j)
      basis.push_back({a.element(i).name + "|" + b.element(j).name, a.bidegree(i) + b.bidegree(j)});

  std::map<std::pair<std::size_t, std::size_t>, Vector> products;
  for (std::size_t i1 = 0; i1 < da; ++i1) {
    for (std::size_t j1 = 0; j1 < db; ++j1) {
      for (std::size_t i2 = 0; i2 < da; ++i2) {
        const SparseVector& pa = a.product(i1, i2);
        if (pa.empty()) continue;
        for (std::size_t j2 = 0; j2 < db; ++j2) {
          const SparseVector& pb = b.product(j1, j2);
          if (pb.empty()) continue;
          const int sign = (b.degree(j1) * a.degree(i2)) % 2 == 0 ? 1 : -1;
          Vector v(dim);
          for (const auto& [s, cs] : pa)
            for (const auto& [t, ct] : pb) v[idx(s, t)] += sign * cs * ct;
          products.emplace(std::make_pair(idx(i1, j1), idx(i2, j2)), std::move(v));
        }
      }
    }
  }
  auto alg = std::make_shared<const BigradedAlgebra>(a.n() + b.n(), std::move(basis), std::move(products),
                                                     unit_vector(dim, idx(ua, ub)));
  Vector omega(dim), integral(dim);
  for (std::size_t i = 0; i < da; ++i) omega[idx(i, ub)] += ma.algebra.omega()[i];
  for (std::size_t j = 0; j < db; ++j) omega[idx(ua, j)] += mb.algebra.omega()[j];
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < db; ++j) integral[idx(i, j)] = ma.algebra.integral()[i] * mb.algebra.integral()[j];

  VarietyModel m{ma.name + "x" + mb.name, PolarizedAlgebra(alg, omega, integral), {}, {}};
  for (std::size_t g : ma.h0_omega1) m.h0_omega1.push_back(idx(g, ub));
  for (std::size_t g : mb.h0_omega1) m.h0_omega1.push_back(idx(ua, g));
  for (std::size_t g : ma.h1_O) m.h1_O.push_back(idx(g, ub));
  for (std::size_t g : mb.h1_O) m.h1_O.push_back(idx(ua, g));
  validate_model(m);
  return m;
}

// ------------------------------------------------------------------ tables

std::map<Bidegree, std::size_t> lagrangian_e2_table(const VarietyModel& m) {
  const int n = m.algebra.n();
  auto cells = m.algebra.algebra().cell_dims();
  std::map<Bidegree, std::size_t> out;
  for (int p = 0; p <= n; ++p)
    for (int q = 0; q <= n; ++q) {
      auto it = cells.find({p, q});
      out[{p, q}] = it == cells.end() ? 0 : it->second;
    }
  return out;
}

std::vector<std::size_t> ext_dimensions(const VarietyModel& m, bool degenerate) {
  if (!degenerate) throw Unsupported("ext_dimensions: only the degenerate case is implemented");
  std::vector<std::size_t> out(static_cast<std::size_t>(2 * m.algebra.n() + 1));
  for (const auto& [b, dim] : lagrangian_e2_table(m)) out[static_cast<std::size_t>(b.total())] += dim;
  return out;
}

LciTable lci_e2_table(int c, const std::map<Bidegree, std::size_t>& input_dims) {
  if (c < 0) throw PreconditionError("lci_e2_table: codimension must be non-negative");
  LciTable t;
  t.codim = c;
  for (const auto& [b, dim] : input_dims) {
    if (dim == 0) continue;
    if (b.q < 0 || b.q > c)
      throw InvariantViolation("lci_e2_table: nonzero entry at " + to_string(b) + " outside 0 <= q <= " + std::to_string(c));
    if (b.p < 0) throw InvariantViolation("lci_e2_table: nonzero entry at " + to_string(b) + " with p < 0");
  }
  int p_max = 0;
  for (const auto& [b, dim] : input_dims) p_max = std::max(p_max, b.p);
  for (int p = 0; p <= p_max; ++p)
    for (int q = 0; q <= c; ++q) {
      auto it = input_dims.find({p, q});
      t.table[{p, q}] = it == input_dims.end() ? 0 : it->second;
    }
  return t;
}

std::optional<Bidegree> lci_product_target(const LciTable& t, Bidegree a, Bidegree b) {
  Bidegree s = a + b;
  if (s.q > t.codim) return std::nullopt;
  return s;
}

// ------------------------------------------------------------------ d₂

Derivation d2_from_alpha(const VarietyModel& m, const ObstructionDatum& od) {
  const auto& alg = m.algebra.algebra_ptr();
  const BigradedAlgebra& a = *alg;
  const std::size_t dim = a.dim();
  const Bidegree shift{2, -1};
  std::map<std::size_t, Vector> images;
  for (std::size_t g : m.h0_omega1) images[g] = Vector(dim);
  for (std::size_t g : m.h1_O) images[g] = Vector(dim);
  for (const auto& [g, v] : od.alpha) {
    if (std::find(m.h0_omega1.begin(), m.h0_omega1.end(), g) == m.h0_omega1.end()) {
      throw PreconditionError("d2_from_alpha: " + (g < dim ? a.element(g).name : std::to_string(g)) +
                              " is not a (0,1) generator of " + m.name);
    }
    if (v.size() != dim) throw PreconditionError("d2_from_alpha: image of " + a.element(g).name + " has wrong length");
    Vector s = v;
    for (auto& x : s) x *= od.scale;
    images[g] = std::move(s);
  }

  if (generated_in_degree_one(a)) return derivation_extend(alg, shift, images);

  // Otherwise pick the derivation with these generator values out of the
  // full derivation space, insisting that it is unique.
  std::vector<Derivation> space = derivation_space(alg, shift);
  std::vector<Vector> columns(space.size());
  Vector rhs;
  for (const auto& [g, v] : images) {
    for (std::size_t k = 0; k < dim; ++k) {
      rhs.push_back(v[k]);
      for (std::size_t s = 0; s < space.size(); ++s) columns[s].push_back(space[s].matrix()(k, g));
    }
  }
  Matrix system = Matrix::from_columns(columns, rhs.size());
  if (space.empty()) {
    if (!is_zero(rhs)) throw InvariantViolation("d2_from_alpha: " + m.name + " admits no nonzero derivation of bidegree (2,-1)");
    return Derivation::zero(alg, shift);
  }
  if (rank(system) != space.size()) {
    throw PreconditionError("d2_from_alpha: generator values do not determine a unique derivation on " + m.name);
  }
  auto x = solve(system, rhs);
  if (!x) throw InvariantViolation("d2_from_alpha: no derivation of " + m.name + " has the given generator values");
  Matrix out(dim, dim);
  for (std::size_t s = 0; s < space.size(); ++s)
    if (sgn((*x)[s]) != 0) out = out + space[s].matrix().scaled((*x)[s]);
  return Derivation(alg, shift, std::move(out));
}

}  // namespace sseq
