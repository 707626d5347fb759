#include <random>

#include <gtest/gtest.h>

#include "oracles/exterior.hpp"
#include "oracles/naive_rank.hpp"
#include "sseq/error.hpp"
#include "sseq/exactla.hpp"
#include "sseq/fuzz.hpp"
#include "sseq/geometry.hpp"
#include "sseq/lefschetz.hpp"

using namespace sseq;

namespace {

Vector vec(std::initializer_list<int> xs) {
  Vector v;
  for (int x : xs) v.emplace_back(x);
  return v;
}

std::vector<Vector> random_vectors(Rng& rng, std::size_t count, std::size_t n) {
  std::vector<Vector> out;
  for (std::size_t i = 0; i < count; ++i) {
    Vector v(n);
    for (auto& x : v) x = Scalar(rng.uniform(-3, 3), rng.uniform(1, 2));
    for (auto& x : v) x.canonicalize();
    out.push_back(v);
  }
  return out;
}

}  // namespace

TEST(Scalar, ParseAndFormat) {
  EXPECT_EQ(parse_scalar("-6/4"), Scalar(-3, 2));
  EXPECT_EQ(format_scalar(Scalar(-3, 2)), "-3/2");
  EXPECT_EQ(format_scalar(Scalar(4)), "4");
  EXPECT_THROW(parse_scalar("1/0"), ParseError);
  EXPECT_THROW(parse_scalar("x"), ParseError);
}

TEST(CanonicalBasis, ProportionalVectorsCollapse) {
  auto s = Subspace::span({vec({2, 4}), vec({1, 2})}, 2);
  ASSERT_EQ(s.dim(), 1u);
  EXPECT_EQ(s.vectors()[0], vec({1, 2}));
}

TEST(CanonicalBasis, StandardBasisIsIdentity) {
  auto s = Subspace::span({vec({0, 0, 1}), vec({1, 0, 0}), vec({0, 1, 0})}, 3);
  EXPECT_EQ(s.basis(), Matrix::identity(3));
}

TEST(CanonicalBasis, RankMatchesIndependentElimination) {
  Rng rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    auto vs = random_vectors(rng, 6, 4);
    if (trial % 3 == 0) vs[5] = vs[0];
    EXPECT_EQ(Subspace::span(vs, 4).dim(), oracle::naive_rank(vs));
    EXPECT_EQ(rank(Matrix::from_rows(vs, 4)), oracle::naive_rank(vs));
  }
}

TEST(CanonicalBasis, SpanInvariantUnderChangeOfGenerators) {
  Rng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    auto vs = random_vectors(rng, 3, 5);
    std::vector<Vector> mixed = vs;
    for (std::size_t k = 0; k < 5; ++k) mixed[0][k] += 2 * vs[1][k] - vs[2][k];
    EXPECT_EQ(Subspace::span(vs, 5), Subspace::span(mixed, 5));
  }
}

TEST(CanonicalBasis, WrongLengthRejected) {
  EXPECT_THROW(Subspace::span({vec({1, 2, 3})}, 2), InvariantViolation);
}

TEST(SubspaceOps, DimensionFormulaAndKernel) {
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    auto a = Subspace::span(random_vectors(rng, 3, 5), 5);
    auto b = Subspace::span(random_vectors(rng, 3, 5), 5);
    EXPECT_EQ((a + b).dim() + intersect(a, b).dim(), a.dim() + b.dim());
    auto rows = random_vectors(rng, 3, 5);
    Matrix f = Matrix::from_rows(rows, 5);
    EXPECT_EQ(kernel(f).dim() + oracle::naive_rank(rows), 5u);
    auto ker = kernel(f);
    for (const auto& v : ker.vectors()) EXPECT_TRUE(is_zero(f.apply(v)));
    EXPECT_TRUE(preimage(f, image(f, a)).contains(a));
  }
}

TEST(SubspaceOps, SolveAndReduce) {
  Matrix m = Matrix::from_rows({vec({1, 1}), vec({2, 2})}, 2);
  EXPECT_FALSE(solve(m, vec({1, 1})).has_value());
  auto x = solve(m, vec({3, 6}));
  ASSERT_TRUE(x.has_value());
  EXPECT_EQ(m.apply(*x), vec({3, 6}));
  auto s = Subspace::span({vec({1, 1, 0})}, 3);
  EXPECT_TRUE(is_zero(s.reduce(vec({2, 2, 0}))));
  Vector v = vec({1, 0, 0});
  Vector r = s.reduce(v);
  Vector diff(3);
  for (int i = 0; i < 3; ++i) diff[i] = v[i] - r[i];
  EXPECT_TRUE(s.contains(diff));
  EXPECT_EQ(r[s.pivots()[0]], 0);
}

TEST(Subquotient, DenominatorMustBeContained) {
  auto z = Subspace::span({vec({1, 0})}, 2);
  auto b = Subspace::span({vec({0, 1})}, 2);
  EXPECT_THROW(Subquotient(z, b), InvariantViolation);
}

TEST(InducedMap, IdentityAndZero) {
  Subquotient sq(Subspace::full(3), Subspace::span({vec({1, 1, 0})}, 3));
  EXPECT_EQ(induced_map(Matrix::identity(3), sq, sq), Matrix::identity(2));
  EXPECT_TRUE(induced_map(Matrix(3, 3), sq, sq).is_zero());
}

TEST(InducedMap, QuotientOfPlane) {
  Subquotient sq(Subspace::full(2), Subspace::span({vec({1, 0})}, 2));
  Matrix m = induced_map(Matrix::identity(2), sq, sq);
  ASSERT_EQ(m.rows(), 1u);
  ASSERT_EQ(m.cols(), 1u);
  EXPECT_EQ(m(0, 0), 1);
}

TEST(InducedMap, CompositionIsFunctorial) {
  Rng rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    auto f = Matrix::from_rows(random_vectors(rng, 4, 4), 4);
    auto g = Matrix::from_rows(random_vectors(rng, 4, 4), 4);
    auto b = Subspace::span(random_vectors(rng, 1, 4), 4);
    Subquotient bottom(Subspace::full(4), b);
    Subquotient mid(Subspace::full(4), image(f, b));
    Subquotient top(Subspace::full(4), image(g * f, b));
    EXPECT_EQ(induced_map(g * f, bottom, top), induced_map(g, mid, top) * induced_map(f, bottom, mid));
  }
}

TEST(InducedMap, RejectsMapsNotRespectingSubspaces) {
  Subquotient src(Subspace::full(2), Subspace::zero(2));
  Subquotient dst(Subspace::span({vec({1, 0})}, 2), Subspace::zero(2));
  EXPECT_THROW(induced_map(Matrix::identity(2), src, dst), InvariantViolation);
}

TEST(PairingRank, SymplecticAndZero) {
  auto r = pairing_rank(Matrix::from_rows({vec({0, 1}), vec({-1, 0})}, 2));
  EXPECT_EQ(r.rank, 2u);
  EXPECT_TRUE(r.nondegenerate);
  auto z = pairing_rank(Matrix(3, 3));
  EXPECT_EQ(z.rank, 0u);
  EXPECT_FALSE(z.nondegenerate);
  EXPECT_THROW(pairing_rank(Matrix(2, 3)), InvariantViolation);
}

TEST(PairingRank, TorusTopPrimitivePairing) {
  auto m = torus_model(2);
  const auto& pa = m.algebra;
  const auto& a = pa.algebra();
  auto prim = primitive_subspaces(pa);
  const auto& h20 = prim.at({2, 0});
  const auto& h02 = prim.at({0, 2});
  ASSERT_EQ(h20.dim(), 1u);
  ASSERT_EQ(h02.dim(), 1u);
  // ∫ η₁η₂ ∧ ξ₁ξ₂ by word expansion: the only possible pairing value.
  oracle::Element top = oracle::xi(1) * oracle::eta(1) * oracle::xi(2) * oracle::eta(2);
  oracle::Element prod = oracle::eta(1) * oracle::eta(2) * oracle::xi(1) * oracle::xi(2);
  ASSERT_EQ(prod.size(), 1u);
  Scalar expected = prod.begin()->second / top.begin()->second;
  EXPECT_NE(expected, 0);
  Vector x = oracle::to_vector(oracle::eta(1) * oracle::eta(2), a);
  Vector y = oracle::to_vector(oracle::xi(1) * oracle::xi(2), a);
  EXPECT_EQ(pa.integrate(a.multiply(x, y)), expected);
  Matrix gram(1, 1);
  gram(0, 0) = pa.integrate(a.multiply(h20.vectors()[0], h02.vectors()[0]));
  EXPECT_EQ(pairing_rank(gram).rank, 1u);
}
