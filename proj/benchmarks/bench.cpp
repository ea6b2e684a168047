#include <benchmark/benchmark.h>

#include <random>

#include "tropmod/corpus.hpp"

using namespace tropmod;

namespace {

std::vector<PlanePoly> cubics(int n, bool with_cycle) {
  std::mt19937_64 rng(42);
  std::vector<PlanePoly> out;
  for (int k = 0; k < n; ++k) out.push_back(random_cubic(rng, 6, 3, with_cycle));
  return out;
}

}  // namespace

static void BM_Tropicalize(benchmark::State& state) {
  auto gs = cubics(64, false);
  size_t k = 0;
  for (auto _ : state) benchmark::DoNotOptimize(tropicalize(gs[k++ % gs.size()]));
}
BENCHMARK(BM_Tropicalize);

static void BM_JValuation(benchmark::State& state) {
  auto gs = cubics(64, true);
  size_t k = 0;
  for (auto _ : state) {
    try {
      benchmark::DoNotOptimize(cubic_j_valuation(gs[k++ % gs.size()]));
    } catch (const DomainError&) {
    }
  }
}
BENCHMARK(BM_JValuation);

static void BM_LocalDiscriminants(benchmark::State& state) {
  auto gs = cubics(64, true);
  size_t k = 0;
  for (auto _ : state) benchmark::DoNotOptimize(local_discriminants(gs[k++ % gs.size()]));
}
BENCHMARK(BM_LocalDiscriminants);

static void BM_ReembedVertical(benchmark::State& state) {
  PlanePoly g = corpus_polynomial("edge-unfolding");
  Lifting f{LineType::Vertical, 0, Puiseux(1), "z"};
  for (auto _ : state) benchmark::DoNotOptimize(reembed(g, f));
}
BENCHMARK(BM_ReembedVertical);

static void BM_ReembedSkew(benchmark::State& state) {
  PlanePoly g = corpus_polynomial("genus-3");
  Lifting f{LineType::Skew, 0, Puiseux(1), "z"};
  for (auto _ : state) benchmark::DoNotOptimize(reembed_skew(g, f));
}
BENCHMARK(BM_ReembedSkew);

static void BM_RepairCorpus(benchmark::State& state) {
  const char* names[] = {"two-step", "dim-4", "edge-unfolding", "pushed-edge"};
  PlanePoly g = corpus_polynomial(names[state.range(0)]);
  state.SetLabel(names[state.range(0)]);
  for (auto _ : state) benchmark::DoNotOptimize(repair_elliptic(g));
}
BENCHMARK(BM_RepairCorpus)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

static void BM_RepairRandom(benchmark::State& state) {
  auto gs = cubics(32, true);
  size_t k = 0;
  for (auto _ : state) {
    try {
      benchmark::DoNotOptimize(repair_elliptic(gs[k++ % gs.size()]));
    } catch (const DomainError&) {
    }
  }
}
BENCHMARK(BM_RepairRandom)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
