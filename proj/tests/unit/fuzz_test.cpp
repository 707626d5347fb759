#include <gtest/gtest.h>

#include "sseq/fuzz.hpp"
#include "sseq/json_io.hpp"

using namespace sseq;

TEST(Rng, DeterministicStreams) {
  Rng a(5, 3);
  Rng b(5, 3);
  Rng c(5, 4);
  bool differs = false;
  for (int i = 0; i < 50; ++i) {
    auto x = a.below(1000);
    EXPECT_EQ(x, b.below(1000));
    differs |= x != c.below(1000);
  }
  EXPECT_TRUE(differs);
  Rng d(1);
  for (int i = 0; i < 200; ++i) {
    int v = d.uniform(-2, 2);
    EXPECT_GE(v, -2);
    EXPECT_LE(v, 2);
  }
}

TEST(RandomComplex, RespectsBounds) {
  ComplexBounds b;
  for (int i = 0; i < 50; ++i) {
    Rng rng(31, i);
    auto fk = random_filtered_complex(rng, b);
    const auto& k = fk.complex();
    EXPECT_GE(k.lo(), b.degree_min);
    EXPECT_LE(k.hi(), b.degree_max);
    for (int n = k.lo(); n <= k.hi(); ++n) EXPECT_LE(k.dim(n), b.max_dim);
    EXPECT_LE(fk.filtration().width(), b.max_width);
  }
}

TEST(RandomComplex, SameSeedSameComplex) {
  Rng a(8, 2);
  Rng b(8, 2);
  auto x = filtered_complex_to_json(random_filtered_complex(a, ComplexBounds{}));
  auto y = filtered_complex_to_json(random_filtered_complex(b, ComplexBounds{}));
  EXPECT_EQ(x.dump(), y.dump());
}

TEST(DerivationComplex, SecondPageIsTheAlgebra) {
  auto m = torus_model(1);
  auto d = Derivation::zero(m.algebra.algebra_ptr(), {2, -1});
  SpectralSequence ss(derivation_complex(d));
  EXPECT_EQ(ss.page(2).dims(), m.algebra.algebra().cell_dims());
}

TEST(Fuzz, SmallRunHasNoCounterexamplesAndIgnoresThreadCount) {
  FuzzConfig cfg;
  cfg.seed = 2;
  cfg.complex_cases = 12;
  cfg.derivation_cases = 8;
  cfg.threads = 1;
  auto r1 = run_fuzz(cfg);
  EXPECT_TRUE(r1.counterexamples.empty());
  cfg.threads = 3;
  auto r3 = run_fuzz(cfg);
  EXPECT_EQ(fuzz_report_to_json(cfg, r1).dump(), fuzz_report_to_json(cfg, r3).dump());
}
