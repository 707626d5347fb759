#include <benchmark/benchmark.h>

#include "sseq/exactla.hpp"
#include "sseq/fuzz.hpp"
#include "sseq/geometry.hpp"
#include "sseq/lefschetz.hpp"
#include "sseq/spectral.hpp"

using namespace sseq;

static void BM_Rank(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(1);
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = Scalar(rng.uniform(-5, 5), rng.uniform(1, 4));
  for (auto _ : state) benchmark::DoNotOptimize(rank(m));
}
BENCHMARK(BM_Rank)->Arg(8)->Arg(16)->Arg(32);

static void BM_IteratedPages(benchmark::State& state) {
  std::vector<FilteredComplex> cs;
  for (int i = 0; i < 10; ++i) {
    Rng rng(3, i);
    cs.push_back(random_filtered_complex(rng, ComplexBounds{}));
  }
  for (auto _ : state)
    for (const auto& fk : cs) {
      SpectralSequence ss(fk);
      benchmark::DoNotOptimize(ss.page(6).dims());
    }
}
BENCHMARK(BM_IteratedPages)->Unit(benchmark::kMillisecond);

static void BM_DirectPages(benchmark::State& state) {
  std::vector<std::shared_ptr<const FilteredComplex>> cs;
  for (int i = 0; i < 10; ++i) {
    Rng rng(3, i);
    cs.push_back(std::make_shared<FilteredComplex>(random_filtered_complex(rng, ComplexBounds{})));
  }
  for (auto _ : state)
    for (const auto& fk : cs)
      for (int r = 1; r <= 6; ++r) benchmark::DoNotOptimize(direct_page(fk, r).dims());
}
BENCHMARK(BM_DirectPages)->Unit(benchmark::kMillisecond);

static void BM_DeligneTorus3(benchmark::State& state) {
  auto m = torus_model(3);
  for (auto _ : state) benchmark::DoNotOptimize(deligne_vanishing(m.algebra));
}
BENCHMARK(BM_DeligneTorus3)->Unit(benchmark::kMillisecond);

static void BM_CertifyTorus2(benchmark::State& state) {
  auto m = torus_model(2);
  const auto& a = m.algebra.algebra();
  ObstructionDatum od;
  od.alpha[*a.find("xi1")] = unit_vector(a.dim(), *a.find("eta1*eta2"));
  auto d = d2_from_alpha(m, od);
  for (auto _ : state) benchmark::DoNotOptimize(degeneration_certify(m.algebra, d).certified);
}
BENCHMARK(BM_CertifyTorus2)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
