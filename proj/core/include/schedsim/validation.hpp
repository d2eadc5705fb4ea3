#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "schedsim/config.hpp"
#include "schedsim/fixtures.hpp"
#include "schedsim/metrics.hpp"
#include "schedsim/oracle.hpp"
#include "schedsim/trace.hpp"

namespace schedsim {

struct RandomWorkloadLimits {
  std::size_t max_processes = 4;
  Tick max_burst = 10;
  Tick max_arrival = 10;
};

/// 1..max_processes processes with uniform arrivals, bursts, feature points
/// and external priorities.
std::vector<ProcessSpec> random_workload(std::mt19937_64& rng, const RandomWorkloadLimits& limits = {});

/// Structural checks every trace must pass: per-processor non-overlap, no
/// process on two processors at once, segment sums equal bursts, slice
/// bounds, one segment per process for run-to-completion policies, and (with
/// zero switch cost) work conservation. Returns human-readable violations.
std::vector<std::string> check_trace_invariants(const Trace& trace,
                                                std::span<const ProcessSpec> workload,
                                                const SimConfig& config);

struct OracleMismatch {
  std::vector<ProcessSpec> workload;
  SimConfig config;
  Verdict verdict;
};

/// Runs engine and oracle on the same input; nothing when they agree.
std::optional<OracleMismatch> compare_with_oracle(std::span<const ProcessSpec> workload,
                                                  const SimConfig& engine_config,
                                                  const SimConfig& oracle_config);

/// Greedy shrink: drops processes and lowers bursts/arrivals while the
/// mismatch persists.
OracleMismatch shrink(OracleMismatch failure, const SimConfig& oracle_config);

std::string describe_workload(std::span<const ProcessSpec> workload);

struct RegressionResult {
  int case_id = 0;
  Environment environment = Environment::Uni;
  FixtureVariant variant = FixtureVariant::AsPrintedGantt;
  Policy policy = Policy::Cspdabrr;
  std::vector<Tick> completions;  // engine, workload order
  AggregateMetrics metrics;       // engine
  ExpectedRun expected;
  std::optional<std::size_t> first_divergent_round;  // 1-based, batch policies only
  bool passed = false;

  std::string describe() const;
};

/// Replays one fixture run through the engine. `engine_config` overrides the
/// fixture's defaults except policy and processor count.
RegressionResult run_regression(const PaperCaseFixture& fixture, Policy policy,
                                const SimConfig& engine_config = {});

/// All 6 cases x {uni, multi} x {RR, Priority, CSPDABRR}.
std::vector<RegressionResult> run_paper_regressions(const SimConfig& engine_config = {});

}  // namespace schedsim
