#include "sseq/fuzz.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <limits>
#include <memory>
#include <thread>

#include "sseq/error.hpp"
#include "sseq/json_io.hpp"
#include "sseq/lefschetz.hpp"
#include "sseq/spectral.hpp"

namespace sseq {

// ------------------------------------------------------------------ Rng

Rng::Rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  engine_.seed(seq);
}

std::uint64_t Rng::below(std::uint64_t n) {
  if (n <= 1) return 0;
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t limit = max - max % n;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % n;
}

int Rng::uniform(int lo, int hi) { return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1))); }

// ------------------------------------------------------------------ complexes

FilteredComplex random_filtered_complex(Rng& rng, const ComplexBounds& bounds) {
  const int lo = rng.uniform(bounds.degree_min, bounds.degree_max);
  const int hi = rng.uniform(lo, std::min(bounds.degree_max, lo + bounds.max_length - 1));
  const auto len = static_cast<std::size_t>(hi - lo + 1);
  std::vector<std::size_t> dims(len);
  for (auto& d : dims) d = static_cast<std::size_t>(rng.uniform(0, static_cast<int>(bounds.max_dim)));
  const int width = rng.uniform(1, bounds.max_width);
  const int p0 = rng.uniform(bounds.p_min, bounds.p_max);

  std::vector<std::vector<int>> level(len);
  for (std::size_t k = 0; k < len; ++k)
    for (std::size_t i = 0; i < dims[k]; ++i) level[k].push_back(rng.uniform(p0, p0 + width - 1));

  // Differentials respecting levels, each killing the image of the previous.
  std::vector<Matrix> ds;
  for (std::size_t k = 0; k + 1 < len; ++k) {
    Matrix d(dims[k + 1], dims[k]);
    const std::vector<Vector> prev = k == 0 ? std::vector<Vector>{} : ds[k - 1].columns();
    for (std::size_t i = 0; i < dims[k + 1]; ++i) {
      std::vector<std::size_t> allowed;
      for (std::size_t j = 0; j < dims[k]; ++j)
        if (level[k + 1][i] >= level[k][j]) allowed.push_back(j);
      if (allowed.empty()) continue;
      Matrix constraints(prev.size(), allowed.size());
      for (std::size_t c = 0; c < prev.size(); ++c)
        for (std::size_t a = 0; a < allowed.size(); ++a) constraints(c, a) = prev[c][allowed[a]];
      for (const auto& v : nullspace(constraints)) {
        if (!rng.coin()) continue;
        const int coeff = rng.uniform(-2, 2);
        if (coeff == 0) continue;
        for (std::size_t a = 0; a < allowed.size(); ++a) d(i, allowed[a]) += coeff * v[a];
      }
    }
    ds.push_back(std::move(d));
  }

  // Scramble each degree by elementary integral operations.
  std::vector<Matrix> g, g_inv;
  for (std::size_t k = 0; k < len; ++k) {
    const std::size_t n = dims[k];
    Matrix a = Matrix::identity(n), b = Matrix::identity(n);
    if (n >= 2) {
      for (std::size_t step = 0; step < 2 * n; ++step) {
        const auto i = static_cast<std::size_t>(rng.below(n));
        auto j = static_cast<std::size_t>(rng.below(n - 1));
        if (j >= i) ++j;
        int c = rng.uniform(-2, 1);
        if (c >= 0) ++c;
        for (std::size_t col = 0; col < n; ++col) a(i, col) += c * a(j, col);
        for (std::size_t row = 0; row < n; ++row) b(row, j) -= c * b(row, i);
      }
    }
    g.push_back(std::move(a));
    g_inv.push_back(std::move(b));
  }
  for (std::size_t k = 0; k + 1 < len; ++k) ds[k] = g[k + 1] * ds[k] * g_inv[k];

  std::vector<std::vector<Subspace>> levels;
  for (int p = p0; p < p0 + width; ++p) {
    std::vector<Subspace> row;
    for (std::size_t k = 0; k < len; ++k) {
      std::vector<Vector> span;
      for (std::size_t i = 0; i < dims[k]; ++i)
        if (level[k][i] >= p) span.push_back(g[k].column(i));
      row.push_back(Subspace::span(span, dims[k]));
    }
    levels.push_back(std::move(row));
  }
  CochainComplex complex(lo, hi, dims, std::move(ds));
  return FilteredComplex(complex, Filtration(lo, hi, dims, p0, std::move(levels)));
}

FilteredComplex derivation_complex(const Derivation& d) {
  const BigradedAlgebra& a = d.algebra();
  if (d.degree() != 1) throw PreconditionError("derivation_complex: derivation must have total degree 1");
  const int n = a.n();
  std::vector<std::vector<std::size_t>> idx;
  std::vector<std::size_t> dims;
  for (int m = 0; m <= 2 * n; ++m) {
    idx.push_back(a.indices_in_degree(m));
    dims.push_back(idx.back().size());
  }
  std::vector<Matrix> ds;
  for (int m = 0; m < 2 * n; ++m) {
    const auto& src = idx[static_cast<std::size_t>(m)];
    const auto& tgt = idx[static_cast<std::size_t>(m + 1)];
    ds.push_back(d.matrix().submatrix(tgt, src));
  }
  int p_lo = 0, p_hi = 0;
  for (const auto& e : a.basis()) {
    p_lo = std::min(p_lo, e.degree.p);
    p_hi = std::max(p_hi, e.degree.p);
  }
  std::vector<std::vector<Subspace>> levels;
  for (int p = p_lo; p <= p_hi; ++p) {
    std::vector<Subspace> row;
    for (int m = 0; m <= 2 * n; ++m) {
      const auto& ix = idx[static_cast<std::size_t>(m)];
      std::vector<Vector> span;
      for (std::size_t k = 0; k < ix.size(); ++k)
        if (a.bidegree(ix[k]).p >= p) span.push_back(unit_vector(ix.size(), k));
      row.push_back(Subspace::span(span, ix.size()));
    }
    levels.push_back(std::move(row));
  }
  CochainComplex complex(0, 2 * n, dims, std::move(ds));
  return FilteredComplex(complex, Filtration(0, 2 * n, dims, p_lo, std::move(levels)));
}

// ------------------------------------------------------------------ derivation cases

DerivationCase random_derivation_case(Rng& rng, bool omega_constraint) {
  VarietyModel model;
  switch (rng.below(9)) {
    case 0: model = torus_model(1); break;
    case 1:
    case 2: model = torus_model(2); break;
    case 3:
    case 4: model = torus_model(3); break;
    case 5: model = projective_space_model(rng.uniform(1, 3)); break;
    case 6: model = product_model(torus_model(1), torus_model(1)); break;
    case 7: model = product_model(torus_model(1), projective_space_model(1)); break;
    default: model = product_model(torus_model(2), projective_space_model(1)); break;
  }
  const BigradedAlgebra& a = model.algebra.algebra();
  const Bidegree shift{2, -1};

  // Unknowns: coefficient of e_t in α(g).
  std::vector<std::pair<std::size_t, std::size_t>> unknowns;
  for (std::size_t g : model.h0_omega1)
    for (std::size_t t : a.indices(a.bidegree(g) + shift)) unknowns.emplace_back(g, t);

  auto datum_from = [&](const Vector& x) {
    ObstructionDatum od;
    for (std::size_t u = 0; u < unknowns.size(); ++u) {
      if (sgn(x[u]) == 0) continue;
      auto [g, t] = unknowns[u];
      auto& v = od.alpha[g];
      if (v.empty()) v.assign(a.dim(), Scalar(0));
      v[t] += x[u];
    }
    return od;
  };

  Vector x(unknowns.size());
  if (!unknowns.empty() && rng.below(4) != 0) {
    std::vector<Vector> directions;
    if (omega_constraint) {
      std::vector<Vector> cols;
      for (std::size_t u = 0; u < unknowns.size(); ++u) {
        Derivation du = d2_from_alpha(model, datum_from(unit_vector(unknowns.size(), u)));
        cols.push_back(du(model.algebra.omega()));
      }
      directions = nullspace(Matrix::from_columns(cols, a.dim()));
    } else {
      for (std::size_t u = 0; u < unknowns.size(); ++u) directions.push_back(unit_vector(unknowns.size(), u));
    }
    for (const auto& v : directions) {
      if (!rng.coin()) continue;
      const int c = rng.uniform(-2, 2);
      for (std::size_t u = 0; u < x.size(); ++u) x[u] += c * v[u];
    }
  }
  ObstructionDatum od = datum_from(x);
  int s = rng.uniform(-3, 2);
  if (s >= 0) ++s;
  od.scale = Scalar(s, rng.uniform(1, 3));
  od.scale.canonicalize();
  return {std::move(model), std::move(od), omega_constraint};
}

// ------------------------------------------------------------------ checks

namespace {

using Failure = std::optional<std::pair<std::string, std::string>>;

std::string cell_str(Bidegree b) { return "(" + to_string(b) + ")"; }

}  // namespace

ComplexCheckResult check_complex(const FilteredComplex& fk_in, int max_page) {
  ComplexCheckResult res;
  auto fail = [&](std::string check, std::string msg) {
    res.failure = std::make_pair(std::move(check), std::move(msg));
    return res;
  };
  auto fk = std::make_shared<const FilteredComplex>(fk_in);
  SpectralSequence ss(fk);
  const auto support = page_support(*fk);

  for (int r = 1; r <= max_page; ++r) {
    const Page& it = ss.page(r);
    Page direct = direct_page(fk, r);
    for (Bidegree b : support) {
      const PageCell* ic = it.cell(b);
      const PageCell* dc = direct.cell(b);
      if (ic->space.dim() != dc->space.dim()) {
        return fail("oracle_dims", "E_" + std::to_string(r) + cell_str(b) + ": iterated " +
                                       std::to_string(ic->space.dim()) + " vs direct " + std::to_string(dc->space.dim()));
      }
      ++res.checks["oracle_dims"];
    }
    // Differentials agree through the identification of the two models.
    std::map<Bidegree, Matrix> phi;
    for (Bidegree b : support) {
      Matrix m = page_identification(direct.cell(b)->space, it.cell(b)->space);
      if (rank(m) != m.rows() || m.rows() != m.cols())
        return fail("oracle_identification", "E_" + std::to_string(r) + cell_str(b) + ": identification is not invertible");
      phi.emplace(b, std::move(m));
    }
    for (Bidegree b : support) {
      Bidegree t = it.target(b);
      auto pt = phi.find(t);
      if (pt == phi.end() || it.dim(b) == 0) continue;
      if (it.differential(b) * phi.at(b) != pt->second * direct.differential(b)) {
        return fail("oracle_differential", "d_" + std::to_string(r) + " out of " + cell_str(b) +
                                               " differs between the iterated and direct pages");
      }
      ++res.checks["oracle_differential"];
    }
    for (Bidegree b : support) {
      Bidegree t = it.target(b);
      if (!(it.differential(t) * it.differential(b)).is_zero())
        return fail("d_squared", "d_" + std::to_string(r) + " o d_" + std::to_string(r) + " != 0 at " + cell_str(b));
      ++res.checks["d_squared"];
    }
    if (r > 1) {
      const Page& prev = ss.page(r - 1);
      for (Bidegree b : support) {
        if (it.dim(b) > prev.dim(b))
          return fail("monotonicity", "dim E_" + std::to_string(r) + cell_str(b) + " exceeds the previous page");
        ++res.checks["monotonicity"];
      }
    }
  }

  // Degeneration detection against E∞.
  const auto inf = ss.e_infinity().dims();
  for (int r = 1; r <= max_page; ++r) {
    bool same = ss.page(r).dims() == inf;
    if (ss.is_degenerate_at(r) != same)
      return fail("degeneration", "is_degenerate_at(" + std::to_string(r) + ") disagrees with dim E_r = dim E_inf");
    ++res.checks["degeneration"];
  }

  try {
    e_infinity_compare(*fk);
    ++res.checks["abutment"];
  } catch (const InternalMismatch& e) {
    return fail("abutment", e.what());
  }

  auto dec = std::make_shared<const FilteredComplex>(decalage(*fk));
  SpectralSequence sd(dec);
  for (int r = 1; r <= 3; ++r) {
    const Page& pd = sd.page(r);
    const Page& pf = ss.page(r + 1);
    std::map<Bidegree, std::size_t> renumbered;
    for (const auto& [b, dim] : pd.dims()) renumbered[{2 * b.p + b.q, -b.p}] = dim;
    if (renumbered != pf.dims()) {
      return fail("decalage", "E_" + std::to_string(r) + "(Dec F) does not match E_" + std::to_string(r + 1) +
                                  "(F) after renumbering");
    }
    ++res.checks["decalage"];
  }
  return res;
}

DerivationCheckResult check_derivation_case(const DerivationCase& c) {
  DerivationCheckResult res;
  auto fail = [&](std::string check, std::string msg) {
    res.failure = std::make_pair(std::move(check), std::move(msg));
    return res;
  };
  const PolarizedAlgebra& pa = c.model.algebra;
  const BigradedAlgebra& a = pa.algebra();

  if (!verify_hard_lefschetz(pa).holds) return fail("hard_lefschetz", c.model.name + " fails hard Lefschetz");
  ++res.checks["hard_lefschetz"];
  if (std::size_t k = deligne_vanishing(pa); k != 0)
    return fail("deligne_vanishing", "commuting degree -1 maps form a space of dimension " + std::to_string(k));
  ++res.checks["deligne_vanishing"];

  Derivation d = d2_from_alpha(c.model, c.alpha);
  LeibnizReport lr = verify_leibniz(d);
  if (!lr.holds) return fail("leibniz", "d2_from_alpha output violates Leibniz");
  ++res.checks["leibniz"];

  SerreReport sr = serre_sign_check(pa, d);
  if (!sr.holds) {
    return fail("serre_sign", "pair (" + a.element(sr.witness->first).name + ", " + a.element(sr.witness->second).name +
                                  "): " + format_scalar(sr.lhs) + " vs " + format_scalar(sr.rhs));
  }
  ++res.checks["serre_sign"];

  const bool closed = is_zero(d(pa.omega()));
  if (c.omega_constraint && !closed) return fail("omega_constraint", "d(omega) = " + a.format(d(pa.omega())));
  if (closed) {
    if (!lefschetz_commutator(pa, d).is_zero()) return fail("commutator", "d(omega) = 0 but [d, L] != 0");
    ++res.checks["commutator"];
  }

  Certificate cert = degeneration_certify(pa, d);
  res.certified = cert.certified;
  if (cert.certified != d.is_zero())
    return fail("certificate", std::string("verdict ") + (cert.certified ? "certified" : "failed") +
                                   " but d is " + (d.is_zero() ? "zero" : "nonzero"));
  ++res.checks["certificate"];

  if (!(d.matrix() * d.matrix()).is_zero()) return fail("square_zero", "d o d != 0 on a generated model");
  SpectralSequence ss(derivation_complex(d));
  const auto e2 = ss.page(2).dims();
  const auto e3 = ss.page(3).dims();
  if (e2 != a.cell_dims()) return fail("page_model", "E_2 of the derivation complex is not the algebra");
  if (cert.certified != (e2 == e3))
    return fail("certificate_pages", std::string("verdict ") + (cert.certified ? "certified" : "failed") +
                                         " but E_3 " + (e2 == e3 ? "=" : "!=") + " E_2");
  ++res.checks["certificate_pages"];
  return res;
}

// ------------------------------------------------------------------ runner

unsigned default_threads() {
  if (const char* env = std::getenv("SS_THREADS")) {
    int v = std::atoi(env);
    if (v > 0) return static_cast<unsigned>(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

FuzzReport run_fuzz(const FuzzConfig& config) {
  struct Outcome {
    std::map<std::string, std::size_t> checks;
    std::optional<Counterexample> counterexample;
    int certified = -1;
  };
  const std::size_t nc = config.complex_cases;
  const std::size_t total = nc + config.derivation_cases;
  std::vector<Outcome> outcomes(total);

  auto run_case = [&](std::size_t i) {
    Outcome& out = outcomes[i];
    if (i < nc) {
      Rng rng(config.seed, i);
      FilteredComplex fk;
      try {
        fk = random_filtered_complex(rng, config.bounds);
        ComplexCheckResult r = check_complex(fk, config.max_page);
        out.checks = std::move(r.checks);
        if (r.failure)
          out.counterexample = Counterexample{"complex", i, r.failure->first, r.failure->second, filtered_complex_to_json(fk)};
      } catch (const std::exception& e) {
        out.counterexample = Counterexample{"complex", i, "exception", e.what(), filtered_complex_to_json(fk)};
      }
      return;
    }
    const std::size_t k = i - nc;
    Rng rng(config.seed, (std::uint64_t{1} << 32) + k);
    std::optional<DerivationCase> dc;
    try {
      dc = random_derivation_case(rng, k % 2 == 0);
      DerivationCheckResult r = check_derivation_case(*dc);
      out.checks = std::move(r.checks);
      out.certified = r.certified ? 1 : 0;
      if (r.failure) {
        ordered_json inst;
        inst["model"] = dc->model.name;
        ordered_json alpha = ordered_json::object();
        for (const auto& [g, v] : dc->alpha.alpha)
          alpha[dc->model.algebra.algebra().element(g).name] = algebra_vector_to_json(v, dc->model.algebra.algebra());
        inst["alpha"] = alpha;
        inst["scale"] = format_scalar(dc->alpha.scale);
        out.counterexample = Counterexample{"derivation", k, r.failure->first, r.failure->second, inst};
      }
    } catch (const std::exception& e) {
      ordered_json inst;
      if (dc) inst["model"] = dc->model.name;
      out.counterexample = Counterexample{"derivation", k, "exception", e.what(), inst};
    }
  };

  const unsigned threads = std::max(1u, std::min<unsigned>(config.threads ? config.threads : default_threads(),
                                                           static_cast<unsigned>(std::max<std::size_t>(total, 1))));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < total; i = next++) run_case(i);
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  FuzzReport report;
  for (auto& o : outcomes) {
    for (const auto& [name, count] : o.checks) report.checks[name] += count;
    if (o.certified == 1) ++report.certified;
    if (o.certified == 0) ++report.not_certified;
    if (o.counterexample) report.counterexamples.push_back(std::move(*o.counterexample));
  }
  return report;
}

ordered_json fuzz_report_to_json(const FuzzConfig& config, const FuzzReport& report) {
  ordered_json out;
  out["seed"] = config.seed;
  out["complex_cases"] = config.complex_cases;
  out["derivation_cases"] = config.derivation_cases;
  out["max_page"] = config.max_page;
  ordered_json checks = ordered_json::object();
  for (const auto& [name, count] : report.checks) checks[name] = count;
  out["checks"] = checks;
  out["certified"] = report.certified;
  out["not_certified"] = report.not_certified;
  ordered_json ces = ordered_json::array();
  for (const auto& c : report.counterexamples) {
    ordered_json j;
    j["suite"] = c.suite;
    j["case"] = c.index;
    j["check"] = c.check;
    j["message"] = c.message;
    j["instance"] = c.instance;
    ces.push_back(std::move(j));
  }
  out["counterexamples"] = ces;
  out["summary"] = std::to_string(report.counterexamples.size()) + " counterexamples";
  return out;
}

}  // namespace sseq
