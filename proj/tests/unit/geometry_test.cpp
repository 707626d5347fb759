#include <gtest/gtest.h>

#include "oracles/exterior.hpp"
#include "sseq/error.hpp"
#include "sseq/fuzz.hpp"
#include "sseq/geometry.hpp"

using namespace sseq;

namespace {

std::size_t binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::size_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST(Models, TorusCounts) {
  for (int n = 1; n <= 4; ++n) {
    auto m = torus_model(n);
    EXPECT_EQ(m.algebra.algebra().dim(), std::size_t{1} << (2 * n));
    auto b = m.algebra.algebra().betti();
    for (int k = 0; k <= 2 * n; ++k) EXPECT_EQ(b[k], binom(2 * n, k));
    EXPECT_EQ(m.h0_omega1.size(), static_cast<std::size_t>(n));
    EXPECT_EQ(m.h1_O.size(), static_cast<std::size_t>(n));
    EXPECT_NO_THROW(validate_model(m));
  }
  EXPECT_THROW(torus_model(0), PreconditionError);
  EXPECT_THROW(torus_model(5), PreconditionError);
}

TEST(Models, ProjectiveSpaceDiamond) {
  auto m = projective_space_model(3);
  auto h = hodge_diamond(m);
  for (int p = 0; p <= 3; ++p)
    for (int q = 0; q <= 3; ++q) EXPECT_EQ(h.at(p, q), p == q ? 1u : 0u);
}

TEST(Models, ProductOfCurvesMatchesTorusTwo) {
  auto prod = product_model(torus_model(1), torus_model(1));
  auto t2 = torus_model(2);
  auto a = hodge_diamond(prod);
  auto b = hodge_diamond(t2);
  for (int p = 0; p <= 2; ++p)
    for (int q = 0; q <= 2; ++q) EXPECT_EQ(a.at(p, q), b.at(p, q));
  EXPECT_TRUE(verify_hard_lefschetz(prod.algebra).holds);
  EXPECT_EQ(prod.h0_omega1.size(), 2u);
}

TEST(Models, HodgeDiamondValidation) {
  EXPECT_THROW(HodgeDiamond(1, {{1, 2}, {1, 1}}), InvariantViolation);
  EXPECT_THROW(HodgeDiamond(1, {{2, 1}, {1, 2}}), InvariantViolation);
  EXPECT_NO_THROW(HodgeDiamond(1, {{1, 1}, {1, 1}}));
}

TEST(E2Table, TorusBinomials) {
  auto t = lagrangian_e2_table(torus_model(2));
  for (int p = 0; p <= 2; ++p)
    for (int q = 0; q <= 2; ++q) EXPECT_EQ(t.at({p, q}), binom(2, p) * binom(2, q));
}

TEST(E2Table, ProjectiveDiagonal) {
  auto t = lagrangian_e2_table(projective_space_model(4));
  for (const auto& [b, d] : t) EXPECT_EQ(d, b.p == b.q ? 1u : 0u);
}

TEST(E2Table, SymmetriesOnBuiltModels) {
  std::vector<VarietyModel> models = {torus_model(1), torus_model(3), projective_space_model(2),
                                      product_model(torus_model(1), projective_space_model(2))};
  for (const auto& m : models) {
    auto t = lagrangian_e2_table(m);
    int n = m.algebra.n();
    for (const auto& [b, d] : t) {
      EXPECT_EQ(d, t.at({b.q, b.p}));
      EXPECT_EQ(d, t.at({n - b.p, n - b.q}));
    }
  }
}

TEST(ExtDimensions, DegenerateBranch) {
  EXPECT_EQ(ext_dimensions(torus_model(2)), (std::vector<std::size_t>{1, 4, 6, 4, 1}));
  auto pn = ext_dimensions(projective_space_model(3));
  for (std::size_t k = 0; k < pn.size(); ++k) EXPECT_EQ(pn[k], k % 2 == 0 ? 1u : 0u);
  EXPECT_THROW(ext_dimensions(torus_model(1), false), Unsupported);
}

TEST(Lci, TableAndProducts) {
  auto t = lci_e2_table(2, {{{0, 0}, 1}, {{0, 1}, 2}, {{1, 2}, 1}});
  EXPECT_EQ(t.product, "exterior");
  EXPECT_EQ(lci_product_target(t, {0, 1}, {1, 1}), (std::optional<Bidegree>{Bidegree{1, 2}}));
  EXPECT_FALSE(lci_product_target(t, {0, 2}, {0, 1}).has_value());
  EXPECT_THROW(lci_e2_table(1, {{{0, 2}, 1}}), InvariantViolation);
}

TEST(D2FromAlpha, ZeroAlpha) {
  auto m = torus_model(2);
  EXPECT_TRUE(d2_from_alpha(m, ObstructionDatum{}).is_zero());
}

TEST(D2FromAlpha, TorusExample) {
  auto m = torus_model(2);
  const auto& a = m.algebra.algebra();
  ObstructionDatum od;
  od.alpha[*a.find("xi1")] = oracle::to_vector(oracle::eta(1) * oracle::eta(2), a);
  auto d = d2_from_alpha(m, od);
  auto direct = derivation_extend(m.algebra.algebra_ptr(), {2, -1}, od.alpha);
  EXPECT_EQ(d.matrix(), direct.matrix());
  EXPECT_EQ(d.shift(), (Bidegree{2, -1}));
}

TEST(D2FromAlpha, LinearInScale) {
  for (int k = 0; k < 12; ++k) {
    Rng rng(404, k);
    auto c = random_derivation_case(rng, false);
    ObstructionDatum one = c.alpha;
    one.scale = 1;
    auto base = d2_from_alpha(c.model, one);
    auto scaled = d2_from_alpha(c.model, c.alpha);
    EXPECT_EQ(scaled.matrix(), base.matrix().scaled(c.alpha.scale));
  }
}

TEST(D2FromAlpha, RejectsNonGenerator) {
  auto m = torus_model(2);
  const auto& a = m.algebra.algebra();
  ObstructionDatum od;
  od.alpha[*a.find("eta1")] = unit_vector(a.dim(), *a.find("eta1*eta2"));
  EXPECT_THROW(d2_from_alpha(m, od), PreconditionError);
}
