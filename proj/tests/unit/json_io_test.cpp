#include <gtest/gtest.h>

#include "sseq/error.hpp"
#include "sseq/fuzz.hpp"
#include "sseq/json_io.hpp"
#include "sseq/spectral.hpp"

using namespace sseq;

TEST(JsonIo, ParseErrorCarriesOffset) {
  try {
    parse_json_text("{\"degrees\": [0, 1", "doc");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("doc"), std::string::npos);
  }
}

TEST(JsonIo, LoadsAcyclicExample) {
  auto fk = filtered_complex_from_json(load_json(std::string(SSEQ_TEST_DATA) + "/acyclic.json"));
  SpectralSequence ss(fk);
  std::map<Bidegree, std::size_t> e2 = {{{0, 0}, 1}, {{2, -1}, 1}};
  EXPECT_EQ(ss.page(2).dims(), e2);
  EXPECT_TRUE(ss.page(3).dims().empty());
}

TEST(JsonIo, FilteredComplexRoundTrip) {
  for (int i = 0; i < 15; ++i) {
    Rng rng(9, i);
    auto fk = random_filtered_complex(rng, ComplexBounds{});
    auto j = json::parse(filtered_complex_to_json(fk).dump());
    auto back = filtered_complex_from_json(j);
    const auto& k = fk.complex();
    ASSERT_EQ(back.complex().lo(), k.lo());
    ASSERT_EQ(back.complex().hi(), k.hi());
    for (int n = k.lo(); n <= k.hi(); ++n) {
      EXPECT_EQ(back.complex().d(n), k.d(n));
      for (int p = fk.filtration().p_low() - 1; p <= fk.filtration().p_high() + 1; ++p)
        EXPECT_EQ(back.level(p, n), fk.level(p, n));
    }
  }
}

TEST(JsonIo, RejectsBadMatrixShape) {
  json j = json::parse(R"({"degrees":[0,1],"dims":[1,1],"d":{"0":[["1","2"]]}})");
  EXPECT_THROW(filtered_complex_from_json(j), ParseError);
}

TEST(JsonIo, RejectsNonComplex) {
  json j = json::parse(R"({"degrees":[0,2],"dims":[1,1,1],"d":{"0":[["1"]],"1":[["1"]]}})");
  EXPECT_THROW(filtered_complex_from_json(j), InvariantViolation);
}

TEST(JsonIo, ModelRoundTrip) {
  std::vector<VarietyModel> models = {torus_model(2), projective_space_model(2),
                                      product_model(torus_model(1), projective_space_model(1))};
  for (const auto& m : models) {
    auto back = model_from_json(json::parse(model_to_json(m).dump()));
    const auto& a = m.algebra.algebra();
    const auto& b = back.algebra.algebra();
    ASSERT_EQ(a.dim(), b.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
      for (std::size_t j = 0; j < a.dim(); ++j)
        EXPECT_EQ(a.product(i, j), b.product(i, j));
    EXPECT_EQ(back.algebra.omega(), m.algebra.omega());
    EXPECT_EQ(back.algebra.integral(), m.algebra.integral());
    EXPECT_EQ(back.h0_omega1, m.h0_omega1);
  }
}

TEST(JsonIo, DerivationRoundTrip) {
  auto m = torus_model(2);
  auto a = m.algebra.algebra_ptr();
  ObstructionDatum od;
  od.alpha[*a->find("xi2")] = unit_vector(a->dim(), *a->find("eta1*eta2"));
  od.scale = Scalar(-2, 3);
  auto d = d2_from_alpha(m, od);
  auto back = derivation_from_json(json::parse(derivation_to_json(d).dump()), a);
  EXPECT_EQ(back.matrix(), d.matrix());
  EXPECT_EQ(back.shift(), d.shift());
}

TEST(JsonIo, SparseAlgebraVector) {
  auto m = torus_model(1);
  const auto& a = m.algebra.algebra();
  auto v = algebra_vector_from_json(json::parse(R"({"xi1*eta1": "1/2"})"), a, "v");
  EXPECT_EQ(v[*a.find("xi1*eta1")], Scalar(1, 2));
  EXPECT_THROW(algebra_vector_from_json(json::parse(R"({"nope": "1"})"), a, "v"), ParseError);
}

TEST(JsonIo, CertificateDocument) {
  auto m = torus_model(2);
  auto cert = degeneration_certify(m.algebra, Derivation::zero(m.algebra.algebra_ptr(), {2, -1}));
  auto j = certificate_to_json(cert, m.algebra.algebra());
  EXPECT_EQ(j["verdict"], "certified");
  EXPECT_EQ(j["steps"].size(), cert.steps.size());
}
