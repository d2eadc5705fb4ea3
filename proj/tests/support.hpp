#pragma once

#include <random>
#include <string>
#include <vector>

#include "schedsim/engine.hpp"
#include "schedsim/fixtures.hpp"
#include "schedsim/metrics.hpp"
#include "schedsim/trace.hpp"

namespace schedsim::test {

inline std::vector<Tick> completions(const Trace& trace) {
  std::vector<Tick> out;
  for (const auto& p : trace.processes) out.push_back(p.completion.value_or(-1));
  return out;
}

inline std::vector<Tick> first_dispatches(const Trace& trace) {
  std::vector<Tick> out;
  for (const auto& p : trace.processes) out.push_back(p.first_dispatch.value_or(-1));
  return out;
}

inline SimConfig config_for(Policy policy, std::size_t processors) {
  SimConfig c;
  c.policy = policy;
  c.processors = processors;
  return c;
}

inline Trace run_case(int id, Environment env, Policy policy,
                      FixtureVariant variant = FixtureVariant::AsPrintedGantt) {
  const auto fx = paper_case(id, variant).in(env);
  return simulate(fx.workload, fx.config(policy));
}

inline AggregateMetrics metrics_of(const Trace& trace, const std::vector<ProcessSpec>& workload) {
  return aggregate(per_process_metrics(trace, workload), trace);
}

inline std::string avg_waiting(int id, Environment env, Policy policy) {
  const auto fx = paper_case(id).in(env);
  return format_fixed(metrics_of(simulate(fx.workload, fx.config(policy)), fx.workload).avg_waiting, 2);
}

inline std::string avg_turnaround(int id, Environment env, Policy policy) {
  const auto fx = paper_case(id).in(env);
  return format_fixed(metrics_of(simulate(fx.workload, fx.config(policy)), fx.workload).avg_turnaround, 2);
}

inline ProcessSpec proc(ProcessId id, Tick arrival, Tick burst, StaticPfp pfp = {},
                        std::optional<int> priority = std::nullopt) {
  return ProcessSpec{id, arrival, burst, pfp, priority};
}

/// Uniform static feature points.
inline StaticPfp random_statics(std::mt19937_64& rng) {
  auto pick = [&](int hi) { return std::uniform_int_distribution<int>(1, hi)(rng); };
  return StaticPfp{pick(2), pick(3), pick(3), pick(2), pick(4)};
}

}  // namespace schedsim::test
