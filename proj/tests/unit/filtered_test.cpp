#include <gtest/gtest.h>

#include "oracles/naive_rank.hpp"
#include "sseq/error.hpp"
#include "sseq/filtered.hpp"
#include "sseq/fuzz.hpp"
#include "unit/test_helpers.hpp"

using namespace sseq;
using namespace testing_helpers;

namespace {

std::size_t oracle_rank(const Matrix& m) {
  std::vector<Vector> rows;
  for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(m.row(i));
  return rows.empty() ? 0 : oracle::naive_rank(rows);
}

std::vector<CochainComplex> random_complexes(std::uint64_t seed, int count) {
  std::vector<CochainComplex> out;
  for (int i = 0; i < count; ++i) {
    Rng rng(seed, i);
    ComplexBounds b;
    b.max_length = 4;
    b.degree_min = 0;
    b.degree_max = 3;
    b.max_dim = 5;
    out.push_back(random_filtered_complex(rng, b).complex());
  }
  return out;
}

}  // namespace

TEST(Cohomology, AcyclicTwoTerm) {
  CochainComplex k(0, 1, {1, 1}, {Matrix::identity(1)});
  EXPECT_EQ(cohomology(k, 0).dim(), 0u);
  EXPECT_EQ(cohomology(k, 1).dim(), 0u);
}

TEST(Cohomology, ZeroDifferentialGivesWholeSpaces) {
  auto k = zero_complex(-1, {2, 0, 3});
  EXPECT_EQ(cohomology(k, -1).dim(), 2u);
  EXPECT_EQ(cohomology(k, 0).dim(), 0u);
  EXPECT_EQ(cohomology(k, 1).dim(), 3u);
  EXPECT_EQ(cohomology(k, 7).dim(), 0u);
}

TEST(Cohomology, RankNullityOracle) {
  for (const auto& k : random_complexes(101, 30))
    for (int n = k.lo(); n <= k.hi(); ++n)
      EXPECT_EQ(cohomology(k, n).dim(), k.dim(n) - oracle_rank(k.d(n)) - oracle_rank(k.d(n - 1)));
}

TEST(CochainComplex, RejectsNonzeroSquare) {
  EXPECT_THROW(CochainComplex(0, 2, {1, 1, 1}, {Matrix::identity(1), Matrix::identity(1)}), InvariantViolation);
  EXPECT_THROW(CochainComplex(0, 1, {1, 2}, {Matrix::identity(1)}), InvariantViolation);
}

TEST(Truncation, BelowTopIsWhole) {
  for (const auto& k : random_complexes(7, 10)) {
    auto t = truncate_below(k, k.hi());
    for (int n = k.lo(); n <= k.hi(); ++n) EXPECT_EQ(t.dim(n), k.dim(n));
  }
}

TEST(Truncation, AcyclicExamples) {
  CochainComplex k(0, 1, {1, 1}, {Matrix::identity(1)});
  auto below = truncate_below(k, 0);
  EXPECT_EQ(below.dim(0), 0u);
  EXPECT_EQ(below.dim(1), 0u);
  auto above = truncate_above(k, 1);
  EXPECT_EQ(above.dim(0), 0u);
  EXPECT_EQ(above.dim(1), 0u);
  auto w = window(k, 1);
  for (int n = -1; n <= 2; ++n) EXPECT_EQ(cohomology(w, n).dim(), 0u);
}

TEST(Truncation, CohomologyOfTruncations) {
  for (const auto& k : random_complexes(17, 25)) {
    for (int p = k.lo(); p <= k.hi(); ++p) {
      auto below = truncate_below(k, p);
      auto above = truncate_above(k, p);
      auto w = window(k, p);
      for (int i = k.lo() - 1; i <= k.hi() + 1; ++i) {
        std::size_t h = cohomology(k, i).dim();
        EXPECT_EQ(cohomology(below, i).dim(), i <= p ? h : 0u);
        EXPECT_EQ(cohomology(above, i).dim(), i >= p ? h : 0u);
        EXPECT_EQ(cohomology(w, i).dim(), (i == p || i == p - 1) ? h : 0u);
      }
      auto inc = truncate_below_inclusion(k, p);
      for (int i = k.lo(); i <= p; ++i) {
        Matrix f = inc[i - k.lo()];
        EXPECT_EQ(rank(induced_on_cohomology(below, k, i, f)), cohomology(k, i).dim());
      }
      auto proj = truncate_above_projection(k, p);
      for (int i = p; i <= k.hi(); ++i) {
        Matrix f = proj[i - k.lo()];
        EXPECT_EQ(rank(induced_on_cohomology(k, above, i, f)), cohomology(k, i).dim());
      }
    }
  }
}

TEST(Truncation, BottomIsQuasiIsomorphic) {
  for (const auto& k : random_complexes(29, 10)) {
    auto t = truncate_above(k, k.lo());
    for (int n = k.lo(); n <= k.hi(); ++n) EXPECT_EQ(cohomology(t, n).dim(), cohomology(k, n).dim());
  }
}

TEST(Window, ZeroDifferential) {
  auto k = zero_complex(0, {1, 2, 3});
  auto w = window(k, 2);
  EXPECT_EQ(w.dim(0), 0u);
  EXPECT_EQ(w.dim(1), 2u);
  EXPECT_EQ(w.dim(2), 3u);
}

TEST(Filtration, TrivialFiltration) {
  auto k = zero_complex(0, {2, 1});
  FilteredComplex fk(k, trivial_filtration(k));
  auto gr0 = graded_piece(fk, 0);
  EXPECT_EQ(gr0.dim(0), 2u);
  EXPECT_EQ(gr0.dim(1), 1u);
  EXPECT_EQ(graded_piece(fk, 1).dim(0), 0u);
  EXPECT_EQ(graded_piece(fk, -1).dim(1), 0u);
}

TEST(Filtration, FullFlagGivesLines) {
  auto k = zero_complex(0, {2});
  std::vector<std::vector<Subspace>> levels = {{Subspace::full(2)},
                                               {Subspace::span({{Scalar(1), Scalar(1)}}, 2)},
                                               {Subspace::zero(2)}};
  FilteredComplex fk(k, Filtration(0, 0, {2}, 0, levels));
  EXPECT_EQ(graded_space(fk, 0, 0).dim(), 1u);
  EXPECT_EQ(graded_space(fk, 1, 0).dim(), 1u);
  EXPECT_EQ(graded_space(fk, 2, 0).dim(), 0u);
}

TEST(Filtration, BeteConcentratesInDegreeP) {
  CochainComplex k(0, 2, {1, 2, 1}, {mat({{1}, {0}}, 1), mat({{0, 1}}, 2)});
  FilteredComplex fk(k, bete_filtration(k));
  for (int p = 0; p <= 2; ++p) {
    auto gr = graded_piece(fk, p);
    for (int n = 0; n <= 2; ++n) EXPECT_EQ(gr.dim(n), n == p ? k.dim(n) : 0u);
  }
}

TEST(Filtration, GradedDimensionsSumToTotal) {
  for (int i = 0; i < 20; ++i) {
    Rng rng(55, i);
    auto fk = random_filtered_complex(rng, ComplexBounds{});
    const auto& k = fk.complex();
    for (int n = k.lo(); n <= k.hi(); ++n) {
      std::size_t total = 0;
      for (int p = fk.filtration().p_low() - 1; p <= fk.filtration().p_high(); ++p)
        total += graded_space(fk, p, n).dim();
      EXPECT_EQ(total, k.dim(n));
    }
  }
}

TEST(Filtration, RejectsIncompatibleDifferential) {
  CochainComplex k(0, 1, {1, 1}, {Matrix::identity(1)});
  std::vector<std::vector<Subspace>> levels = {{Subspace::full(1), Subspace::zero(1)},
                                               {Subspace::zero(1), Subspace::zero(1)}};
  EXPECT_THROW(FilteredComplex(k, Filtration(0, 1, {1, 1}, 0, levels)), InvariantViolation);
}

TEST(Filtration, RejectsIncreasingLevels) {
  std::vector<std::vector<Subspace>> levels = {{Subspace::zero(1)}, {Subspace::full(1)}};
  EXPECT_THROW(Filtration(0, 0, {1}, 0, levels), InvariantViolation);
}
