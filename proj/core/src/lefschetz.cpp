#include "sseq/lefschetz.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "sseq/error.hpp"

namespace sseq {

namespace {

Vector apply_power(const Matrix& l, Vector v, int k) {
  for (int i = 0; i < k; ++i) v = l.apply(v);
  return v;
}

const Subspace& prim_at(const std::map<Bidegree, Subspace>& prim, Bidegree b, const Subspace& zero) {
  auto it = prim.find(b);
  return it == prim.end() ? zero : it->second;
}

Bidegree swapped(Bidegree b) { return {b.q, b.p}; }

struct SplitResult {
  bool contained = false;
  Vector d_circ;
  Vector d_prime;
};

// d(α) = γ + ω·β with γ ∈ H₀^t and β ∈ H₀^{t−(1,1)}.
SplitResult split_vector(const PolarizedAlgebra& pa, const std::map<Bidegree, Subspace>& prim, Bidegree t,
                         const Vector& v) {
  const std::size_t dim = pa.algebra().dim();
  const Subspace zero = Subspace::zero(dim);
  const Subspace& top = prim_at(prim, t, zero);
  const Subspace& low = prim_at(prim, {t.p - 1, t.q - 1}, zero);
  std::vector<Vector> cols = top.vectors();
  for (const auto& b : low.vectors()) cols.push_back(pa.lefschetz().apply(b));
  SplitResult out{false, Vector(dim), Vector(dim)};
  if (is_zero(v)) {
    out.contained = true;
    return out;
  }
  auto x = solve(Matrix::from_columns(cols, dim), v);
  if (!x) return out;
  out.contained = true;
  for (std::size_t i = 0; i < top.dim(); ++i)
    for (std::size_t k = 0; k < dim; ++k) out.d_circ[k] += (*x)[i] * top.vectors()[i][k];
  for (std::size_t i = 0; i < low.dim(); ++i)
    for (std::size_t k = 0; k < dim; ++k) out.d_prime[k] += (*x)[top.dim() + i] * low.vectors()[i][k];
  return out;
}

int koszul(int a, int b) { return ((a * b) % 2 == 0) ? 1 : -1; }

}  // namespace

// ------------------------------------------------------------------ PolarizedAlgebra

PolarizedAlgebra::PolarizedAlgebra(std::shared_ptr<const BigradedAlgebra> algebra, Vector omega, Vector integral)
    : algebra_(std::move(algebra)), omega_(std::move(omega)), integral_(std::move(integral)) {
  const BigradedAlgebra& a = *algebra_;
  const std::size_t dim = a.dim();
  if (omega_.size() != dim) throw InvariantViolation("polarized algebra: omega has wrong length");
  if (integral_.size() != dim) throw InvariantViolation("polarized algebra: integral has wrong length");
  for (std::size_t i = 0; i < dim; ++i) {
    if (sgn(omega_[i]) != 0 && a.bidegree(i) != Bidegree{1, 1})
      throw InvariantViolation("polarized algebra: omega has a component on " + a.element(i).name + " outside A^{1,1}");
    if (sgn(integral_[i]) != 0 && a.bidegree(i) != Bidegree{a.n(), a.n()}) {
      throw InvariantViolation("polarized algebra: integral is nonzero on " + a.element(i).name + " outside A^{" +
                               to_string({a.n(), a.n()}) + "}");
    }
  }
  l_ = a.left_multiplication(omega_);
}

Scalar PolarizedAlgebra::integrate(const Vector& x) const {
  Scalar s = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (sgn(integral_[i]) != 0 && sgn(x[i]) != 0) s += integral_[i] * x[i];
  return s;
}

Vector PolarizedAlgebra::omega_power(int k) const { return apply_power(l_, algebra_->unit(), k); }

// ------------------------------------------------------------------ hard Lefschetz

HardLefschetzReport verify_hard_lefschetz(const PolarizedAlgebra& pa) {
  const BigradedAlgebra& a = pa.algebra();
  const int n = pa.n();
  HardLefschetzReport rep;
  for (int i = n; i >= 0; --i) {
    const auto src = a.indices_in_degree(n - i);
    const auto tgt = a.indices_in_degree(n + i);
    bool ok = src.size() == tgt.size();
    if (ok && !src.empty()) {
      std::vector<Vector> images;
      for (std::size_t s : src) images.push_back(apply_power(pa.lefschetz(), unit_vector(a.dim(), s), i));
      ok = Subspace::span(images, a.dim()).dim() == src.size();
    }
    if (!ok) {
      rep.holds = false;
      rep.failures.push_back(i);
      if (!rep.first_failure) rep.first_failure = i;
    }
  }
  return rep;
}

std::map<Bidegree, Subspace> primitive_subspaces(const PolarizedAlgebra& pa) {
  const BigradedAlgebra& a = pa.algebra();
  const std::size_t dim = a.dim();
  std::map<Bidegree, Subspace> out;
  for (const auto& [cell, count] : a.cell_dims()) {
    const int m = cell.total();
    if (m > pa.n()) continue;
    const auto idx = a.indices(cell);
    std::vector<Vector> images;
    for (std::size_t i : idx) images.push_back(apply_power(pa.lefschetz(), unit_vector(dim, i), pa.n() - m + 1));
    Matrix m_local = Matrix::from_columns(images, dim);
    std::vector<Vector> kernel;
    for (const auto& c : nullspace(m_local)) {
      Vector v(dim);
      for (std::size_t j = 0; j < idx.size(); ++j) v[idx[j]] = c[j];
      kernel.push_back(std::move(v));
    }
    out.emplace(cell, Subspace::span(kernel, dim));
  }
  return out;
}

std::vector<std::size_t> primitive_dims(const PolarizedAlgebra& pa) {
  std::vector<std::size_t> out(static_cast<std::size_t>(2 * pa.n() + 1));
  for (const auto& [cell, space] : primitive_subspaces(pa)) out[static_cast<std::size_t>(cell.total())] += space.dim();
  return out;
}

Matrix twisted_primitive_gram(const PolarizedAlgebra& pa, const std::map<Bidegree, Subspace>& prim, Bidegree cell) {
  const std::size_t dim = pa.algebra().dim();
  const Subspace zero = Subspace::zero(dim);
  const Subspace& left = prim_at(prim, cell, zero);
  const Subspace& right = prim_at(prim, swapped(cell), zero);
  const int m = cell.total();
  Matrix g(left.dim(), right.dim());
  if (m > pa.n()) return g;
  for (std::size_t i = 0; i < left.dim(); ++i) {
    Vector twisted = apply_power(pa.lefschetz(), left.vectors()[i], pa.n() - m);
    for (std::size_t j = 0; j < right.dim(); ++j)
      g(i, j) = pa.integrate(pa.algebra().multiply(twisted, right.vectors()[j]));
  }
  return g;
}

PolarizationReport check_polarization(const PolarizedAlgebra& pa) {
  const BigradedAlgebra& a = pa.algebra();
  const std::size_t dim = a.dim();
  const int n = pa.n();
  PolarizationReport rep;
  auto fail = [&](std::string msg) {
    rep.holds = false;
    rep.failures.push_back(std::move(msg));
  };
  HardLefschetzReport hl = verify_hard_lefschetz(pa);
  if (!hl.holds) fail("hard Lefschetz fails at i = " + std::to_string(*hl.first_failure));

  for (const auto& [cell, count] : a.cell_dims()) {
    Bidegree dual{n - cell.p, n - cell.q};
    const auto left = a.indices(cell);
    const auto right = a.indices(dual);
    if (left.size() != right.size()) {
      fail("Poincare pairing " + to_string(cell) + " x " + to_string(dual) + " is not square");
      continue;
    }
    Matrix g(left.size(), right.size());
    for (std::size_t i = 0; i < left.size(); ++i)
      for (std::size_t j = 0; j < right.size(); ++j)
        g(i, j) = pa.integrate(a.multiply(unit_vector(dim, left[i]), unit_vector(dim, right[j])));
    if (!pairing_rank(g).nondegenerate) fail("Poincare pairing " + to_string(cell) + " x " + to_string(dual) + " is degenerate");
  }

  if (hl.holds) {
    auto prim = primitive_subspaces(pa);
    for (const auto& [cell, space] : prim) {
      const Subspace zero = Subspace::zero(dim);
      if (space.dim() != prim_at(prim, swapped(cell), zero).dim()) {
        fail("primitive pieces " + to_string(cell) + " and " + to_string(swapped(cell)) + " differ in dimension");
        continue;
      }
      if (space.dim() == 0) continue;
      if (!pairing_rank(twisted_primitive_gram(pa, prim, cell)).nondegenerate)
        fail("twisted primitive pairing on " + to_string(cell) + " is degenerate");
    }
  }
  return rep;
}

Matrix lefschetz_commutator(const PolarizedAlgebra& pa, const Derivation& d) {
  return d.matrix() * pa.lefschetz() - pa.lefschetz() * d.matrix();
}

std::map<Bidegree, SplitCell> split_differential(const PolarizedAlgebra& pa, const Derivation& d) {
  Matrix comm = lefschetz_commutator(pa, d);
  if (!comm.is_zero()) {
    for (std::size_t j = 0; j < comm.cols(); ++j) {
      Vector c = comm.column(j);
      if (!is_zero(c)) {
        throw PreconditionError("split_differential: [d, L] is nonzero on " + pa.algebra().element(j).name + ": " +
                                pa.algebra().format(c));
      }
    }
  }
  auto prim = primitive_subspaces(pa);
  std::map<Bidegree, SplitCell> out;
  for (const auto& [cell, space] : prim) {
    SplitCell sc{cell, {}, {}, {}};
    Bidegree t = cell + d.shift();
    for (const auto& alpha : space.vectors()) {
      Vector v = d(alpha);
      SplitResult s = split_vector(pa, prim, t, v);
      if (!s.contained) {
        throw InvariantViolation("split_differential: d(" + pa.algebra().format(alpha) + ") = " +
                                 pa.algebra().format(v) + " is not in the primitive sum at " + to_string(t));
      }
      sc.alpha.push_back(alpha);
      sc.d_circ.push_back(std::move(s.d_circ));
      sc.d_prime.push_back(std::move(s.d_prime));
    }
    out.emplace(cell, std::move(sc));
  }
  return out;
}

// ------------------------------------------------------------------ degree −1 maps

std::size_t deligne_vanishing(const PolarizedAlgebra& pa) {
  const BigradedAlgebra& a = pa.algebra();
  const Matrix& l = pa.lefschetz();
  const auto cells = a.cell_dims();
  std::set<int> classes;
  std::set<int> shifts;
  for (const auto& [c, cnt] : cells) classes.insert(c.p - c.q);
  for (const auto& [s, c1] : cells)
    for (const auto& [t, c2] : cells)
      if (t.total() - s.total() == -1) shifts.insert(t.p - s.p);

  std::size_t total = 0;
  for (int sa : shifts) {
    const Bidegree shift{sa, -1 - sa};
    for (int cls : classes) {
      // One block per source cell on the diagonal p − q = cls.
      std::vector<Bidegree> sources;
      for (const auto& [c, cnt] : cells)
        if (c.p - c.q == cls && cells.count(c + shift)) sources.push_back(c);
      if (sources.empty()) continue;
      std::map<Bidegree, std::size_t> offset;
      std::size_t unknowns = 0;
      for (Bidegree s : sources) {
        offset[s] = unknowns;
        unknowns += a.indices(s).size() * a.indices(s + shift).size();
      }
      auto slot = [&](Bidegree s, std::size_t w_local, std::size_t x_local) {
        return offset.at(s) + w_local * a.indices(s).size() + x_local;
      };
      std::vector<Vector> rows;
      const Bidegree up{1, 1};
      // Equations D(L x) = L D(x) for x in every cell of the diagonal.
      for (const auto& [s, cnt] : cells) {
        if (s.p - s.q != cls) continue;
        const auto xs = a.indices(s);
        const auto ks = a.indices(s + up + shift);
        if (ks.empty()) continue;
        const bool has_s = offset.count(s) > 0;
        const bool has_up = offset.count(s + up) > 0;
        const auto ws = has_s ? a.indices(s + shift) : std::vector<std::size_t>{};
        const auto us = has_up ? a.indices(s + up) : std::vector<std::size_t>{};
        for (std::size_t xi = 0; xi < xs.size(); ++xi) {
          for (std::size_t ki = 0; ki < ks.size(); ++ki) {
            Vector row(unknowns);
            for (std::size_t ui = 0; ui < us.size(); ++ui) {
              const Scalar& c = l(us[ui], xs[xi]);
              if (sgn(c) != 0) row[slot(s + up, ki, ui)] += c;
            }
            for (std::size_t wi = 0; wi < ws.size(); ++wi) {
              const Scalar& c = l(ks[ki], ws[wi]);
              if (sgn(c) != 0) row[slot(s, wi, xi)] -= c;
            }
            if (!is_zero(row)) rows.push_back(std::move(row));
          }
        }
      }
      total += unknowns - Subspace::span(rows, unknowns).dim();
    }
  }
  return total;
}

std::size_t degree_minus_one_maps(const PolarizedAlgebra& pa) {
  auto b = pa.algebra().betti();
  std::size_t s = 0;
  for (std::size_t m = 1; m < b.size(); ++m) s += b[m] * b[m - 1];
  return s;
}

// ------------------------------------------------------------------ Serre signs

SerreReport serre_sign_check(const PolarizedAlgebra& pa, const Derivation& d) {
  const BigradedAlgebra& a = pa.algebra();
  const std::size_t dim = a.dim();
  for (std::size_t i : a.indices({pa.n(), pa.n()})) {
    Vector img = d.image(i);
    if (!is_zero(img)) {
      throw PreconditionError("serre_sign_check: d does not vanish on the top cell: d(" + a.element(i).name + ") = " +
                              a.format(img));
    }
  }
  std::vector<Vector> images(dim);
  for (std::size_t i = 0; i < dim; ++i) images[i] = d.image(i);
  const int top = 2 * pa.n();
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      if (a.degree(i) + a.degree(j) + d.degree() != top) continue;
      Scalar lhs = pa.integrate(a.multiply(images[i], unit_vector(dim, j)));
      Scalar rhs = -koszul(d.degree(), a.degree(i)) * pa.integrate(a.multiply(unit_vector(dim, i), images[j]));
      if (lhs != rhs) return {false, std::make_pair(i, j), lhs, rhs};
    }
  }
  return {};
}

// ------------------------------------------------------------------ certifier

Certificate degeneration_certify(const PolarizedAlgebra& pa, const Derivation& d, CertifyOptions options) {
  const BigradedAlgebra& a = pa.algebra();
  const std::size_t dim = a.dim();
  const int n = pa.n();
  if (d.algebra_ptr().get() != pa.algebra_ptr().get() && d.algebra().dim() != dim)
    throw PreconditionError("degeneration_certify: derivation acts on a different algebra");
  LeibnizReport lr = verify_leibniz(d);
  if (!lr.holds) {
    throw PreconditionError("degeneration_certify: d violates Leibniz on (" + a.element(lr.witness->first).name + ", " +
                            a.element(lr.witness->second).name + ")");
  }

  Certificate cert;
  auto pass = [&](int step, std::string name, std::string statement) {
    cert.steps.push_back({step, std::move(name), std::move(statement), true, std::nullopt});
  };
  auto fail = [&](int step, std::string name, std::string statement, Witness w) {
    cert.steps.push_back({step, std::move(name), std::move(statement), false, std::move(w)});
    cert.failed_step = step;
    return cert;
  };
  auto basis_vec = [&](std::size_t i) { return unit_vector(dim, i); };

  // 1
  const std::string s1 = "d(omega) = 0";
  Vector d_omega = d(pa.omega());
  if (!is_zero(d_omega))
    return fail(1, "omega_closed", s1, {"d(omega) = " + a.format(d_omega), {{"d(omega)", d_omega}}, std::nullopt});
  pass(1, "omega_closed", s1);

  // 2
  const std::string s2 = "d commutes with L";
  Matrix comm = lefschetz_commutator(pa, d);
  for (std::size_t j = 0; j < dim; ++j) {
    Vector c = comm.column(j);
    if (!is_zero(c)) {
      return fail(2, "commutes_with_L", s2,
                  {"[d, L](" + a.element(j).name + ") = " + a.format(c), {{"x", basis_vec(j)}, {"[d,L](x)", c}},
                   a.bidegree(j)});
    }
  }
  pass(2, "commutes_with_L", s2);

  // 3 and 4
  auto prim = primitive_subspaces(pa);
  std::map<Bidegree, std::vector<SplitResult>> splits;
  const std::string s3 = "d maps each primitive piece into the primitive sum of its target";
  for (const auto& [cell, space] : prim) {
    Bidegree t = cell + d.shift();
    for (const auto& alpha : space.vectors()) {
      Vector v = d(alpha);
      SplitResult s = split_vector(pa, prim, t, v);
      if (!s.contained) {
        return fail(3, "primitive_containment", s3,
                    {"d(" + a.format(alpha) + ") = " + a.format(v) + " leaves the primitive sum at " + to_string(t),
                     {{"alpha", alpha}, {"d(alpha)", v}}, cell});
      }
      splits[cell].push_back(std::move(s));
    }
  }
  pass(3, "primitive_containment", s3);

  const std::string s4 = "d' = 0 on every primitive piece";
  for (const auto& [cell, space] : prim) {
    for (std::size_t i = 0; i < space.dim(); ++i) {
      const SplitResult& s = splits[cell][i];
      if (!is_zero(s.d_prime)) {
        const Vector& alpha = space.vectors()[i];
        return fail(4, "d_prime_vanishes", s4,
                    {"alpha = " + a.format(alpha) + ": d(alpha) = " + a.format(d(alpha)) + " = " + a.format(s.d_circ) +
                         " + omega*(" + a.format(s.d_prime) + ")",
                     {{"alpha", alpha}, {"d(alpha)", d(alpha)}, {"d_circ(alpha)", s.d_circ}, {"d_prime(alpha)", s.d_prime}},
                     cell});
      }
    }
  }
  pass(4, "d_prime_vanishes", s4);

  // 5
  const std::string s5 = "d = 0 on total degree n";
  for (std::size_t i : a.indices_in_degree(n)) {
    Vector v = d.image(i);
    if (!is_zero(v)) {
      return fail(5, "middle_vanishing", s5,
                  {"d(" + a.element(i).name + ") = " + a.format(v), {{"x", basis_vec(i)}, {"d(x)", v}}, a.bidegree(i)});
    }
  }
  pass(5, "middle_vanishing", s5);

  // 6
  const std::string s6 = "for k = n-1 ... 0, the twisted pairing forces d = 0 on primitive classes of degree k";
  const Subspace zero = Subspace::zero(dim);
  for (int k = n - 1; k >= 0; --k) {
    for (const auto& [cell, space] : prim) {
      if (cell.total() != k) continue;
      Bidegree t = cell + d.shift();
      const int m = t.total();
      for (const auto& alpha : space.vectors()) {
        Vector v = d(alpha);
        if (m >= 0 && m <= n) {
          const Subspace& dual = prim_at(prim, swapped(t), zero);
          Vector twisted = apply_power(pa.lefschetz(), v, n - m);
          for (const auto& beta : dual.vectors()) {
            Scalar value = pa.integrate(a.multiply(twisted, beta));
            if (sgn(value) != 0) {
              return fail(6, "downward_induction", s6,
                          {"pairing of d(" + a.format(alpha) + ") with " + a.format(beta) + " is " + format_scalar(value),
                           {{"alpha", alpha}, {"beta", beta}, {"d(alpha)", v}}, cell});
            }
          }
          if (!is_zero(v) && !pairing_rank(twisted_primitive_gram(pa, prim, t)).nondegenerate) {
            return fail(6, "downward_induction", s6,
                        {"twisted primitive pairing on " + to_string(t) + " is degenerate", {{"alpha", alpha}}, t});
          }
        }
        if (!is_zero(v)) {
          return fail(6, "downward_induction", s6,
                      {"d(" + a.format(alpha) + ") = " + a.format(v) + " is nonzero although it pairs to zero",
                       {{"alpha", alpha}, {"d(alpha)", v}}, cell});
        }
      }
    }
  }
  pass(6, "downward_induction", s6);

  // 7
  const std::string s7 = "d = 0";
  for (std::size_t j = 0; j < dim; ++j) {
    Vector v = d.image(j);
    if (!is_zero(v)) {
      return fail(7, "conclusion", s7,
                  {"d(" + a.element(j).name + ") = " + a.format(v), {{"x", basis_vec(j)}, {"d(x)", v}}, a.bidegree(j)});
    }
  }
  pass(7, "conclusion", s7);

  if (options.require_square_zero) {
    const std::string s8 = "d o d = 0";
    Matrix sq = d.matrix() * d.matrix();
    for (std::size_t j = 0; j < dim; ++j) {
      Vector v = sq.column(j);
      if (!is_zero(v)) {
        return fail(8, "square_zero", s8,
                    {"d(d(" + a.element(j).name + ")) = " + a.format(v), {{"x", basis_vec(j)}, {"dd(x)", v}}, a.bidegree(j)});
      }
    }
    pass(8, "square_zero", s8);
  }
  cert.certified = true;
  return cert;
}

}  // namespace sseq
