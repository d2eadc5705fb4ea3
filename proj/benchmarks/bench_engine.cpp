#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "schedsim/batch.hpp"
#include "schedsim/engine.hpp"
#include "schedsim/oracle.hpp"
#include "schedsim/validation.hpp"

using namespace schedsim;

namespace {

std::vector<ProcessSpec> synthetic(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Tick> burst(1, 200), gap(0, 20);
  std::uniform_int_distribution<int> p2(1, 2), p3(1, 3), p4(1, 4), prio(1, 10);
  std::vector<ProcessSpec> w;
  Tick arrival = 0;
  for (std::size_t i = 0; i < n; ++i) {
    arrival += gap(rng);
    w.push_back(ProcessSpec{static_cast<ProcessId>(i + 1), arrival, burst(rng),
                            StaticPfp{p2(rng), p3(rng), p3(rng), p2(rng), p4(rng)}, prio(rng)});
  }
  return w;
}

void BM_Simulate(benchmark::State& state) {
  SimConfig c;
  c.policy = static_cast<Policy>(state.range(0));
  c.processors = static_cast<std::size_t>(state.range(2));
  const auto w = synthetic(static_cast<std::size_t>(state.range(1)), 42);
  for (auto _ : state) benchmark::DoNotOptimize(simulate(w, c));
  state.SetItemsProcessed(state.iterations() * state.range(1));
  state.SetLabel(std::string(policy_key(c.policy)));
}

void policy_grid(benchmark::internal::Benchmark* b) {
  for (Policy p : kAllPolicies) {
    for (int n : {16, 256, 2048}) {
      for (int m : {1, 4}) b->Args({static_cast<int>(p), n, m});
    }
  }
}

BENCHMARK(BM_Simulate)->Apply(policy_grid)->ArgNames({"policy", "n", "m"});

// Engine and oracle on the same small instances: the oracle's cost grows
// with total burst, the engine's with the number of events.
void BM_EngineSmall(benchmark::State& state) {
  std::mt19937_64 rng(9);
  std::vector<std::vector<ProcessSpec>> ws;
  for (int i = 0; i < 64; ++i) ws.push_back(random_workload(rng, RandomWorkloadLimits{8, 128, 50}));
  SimConfig c;
  c.processors = 2;
  for (auto _ : state) {
    for (const auto& w : ws) benchmark::DoNotOptimize(simulate(w, c));
  }
  state.SetItemsProcessed(state.iterations() * 64);
}
BENCHMARK(BM_EngineSmall);

void BM_OracleSmall(benchmark::State& state) {
  std::mt19937_64 rng(9);
  std::vector<std::vector<ProcessSpec>> ws;
  for (int i = 0; i < 64; ++i) ws.push_back(random_workload(rng, RandomWorkloadLimits{8, 128, 50}));
  SimConfig c;
  c.processors = 2;
  for (auto _ : state) {
    for (const auto& w : ws) benchmark::DoNotOptimize(oracle_simulate(w, c));
  }
  state.SetItemsProcessed(state.iterations() * 64);
}
BENCHMARK(BM_OracleSmall);

void BM_FormBatch(benchmark::State& state) {
  const auto w = synthetic(static_cast<std::size_t>(state.range(0)), 7);
  std::vector<BatchCandidate> candidates;
  for (const auto& p : w) candidates.push_back({&p, p.burst / 2});
  for (auto _ : state) benchmark::DoNotOptimize(form_batch(candidates, 0));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_FormBatch)->RangeMultiplier(4)->Range(4, 4096)->Complexity(benchmark::oNLogN);

void BM_CaseRegressions(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(run_paper_regressions());
}
BENCHMARK(BM_CaseRegressions);

}  // namespace

BENCHMARK_MAIN();
