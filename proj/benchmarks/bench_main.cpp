#include <benchmark/benchmark.h>

#include "vtrm/vtrm.hpp"

namespace {

using namespace vtrm;

struct Workload {
  SynthData data;
  DistanceMatrix qg;
  DistanceMatrix qq;
  DistanceMatrix gg;
};

Workload make_workload(std::size_t identities, std::size_t frames) {
  SynthConfig cfg{identities, frames, 32, 0.5, 3.0, 0.1, 42};
  auto data = generate(cfg);
  auto qg = euclidean_distances(data.queries, data.gallery);
  auto qq = euclidean_distances(data.queries, data.queries);
  auto gg = euclidean_distances(data.gallery, data.gallery);
  return {std::move(data), std::move(qg), std::move(qq), std::move(gg)};
}

void BM_Direct(benchmark::State& state) {
  const auto w = make_workload(static_cast<std::size_t>(state.range(0)), 20);
  for (auto _ : state) benchmark::DoNotOptimize(direct_ranking(w.qg));
  state.SetComplexityN(static_cast<long>(w.gg.rows()));
}
BENCHMARK(BM_Direct)->Arg(10)->Arg(50)->Arg(100);

// range(1): window size, 0 for Global.
void BM_MineChains(benchmark::State& state) {
  const auto w = make_workload(static_cast<std::size_t>(state.range(0)), 20);
  const auto window = static_cast<std::size_t>(state.range(1));
  const auto cfg = window == 0 ? ChainConfig::global() : ChainConfig::local(window);
  for (auto _ : state) benchmark::DoNotOptimize(mine_chains(w.qg, w.gg, cfg));
  state.SetLabel(to_string(cfg));
}
BENCHMARK(BM_MineChains)->ArgsProduct({{10, 50, 100}, {1, 2, 5, 0}});

void BM_MineChainsThreads(benchmark::State& state) {
  const auto w = make_workload(100, 20);
  const auto threads = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(mine_chains(w.qg, w.gg, ChainConfig::local(2), threads));
  }
}
BENCHMARK(BM_MineChainsThreads)->Arg(1)->Arg(2)->Arg(4)->UseRealTime();

void BM_Fuse(benchmark::State& state) {
  const auto w = make_workload(static_cast<std::size_t>(state.range(0)), 20);
  FusionInput in;
  for (std::size_t window = 1; window <= 3; ++window) {
    in.results.push_back(mine_chains(w.qg, w.gg, ChainConfig::local(window)));
    in.matrices.push_back(w.qg);
  }
  for (auto _ : state) benchmark::DoNotOptimize(fuse(in));
}
BENCHMARK(BM_Fuse)->Arg(10)->Arg(50)->Arg(100);

void BM_Rerank(benchmark::State& state) {
  const auto w = make_workload(static_cast<std::size_t>(state.range(0)), 10);
  for (auto _ : state) {
    benchmark::DoNotOptimize(k_reciprocal_rerank(w.qg, w.qq, w.gg, {20, 6, 0.3}));
  }
}
BENCHMARK(BM_Rerank)->Arg(10)->Arg(30)->Arg(60);

void BM_Evaluate(benchmark::State& state) {
  const auto w = make_workload(static_cast<std::size_t>(state.range(0)), 20);
  const auto ranking = mine_chains(w.qg, w.gg, ChainConfig::local(1));
  for (auto _ : state) benchmark::DoNotOptimize(evaluate(ranking, w.data.truth));
}
BENCHMARK(BM_Evaluate)->Arg(10)->Arg(100);

}  // namespace

BENCHMARK_MAIN();
