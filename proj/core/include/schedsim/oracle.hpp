#pragma once

#include <optional>
#include <span>
#include <string>

#include "schedsim/config.hpp"
#include "schedsim/trace.hpp"

namespace schedsim {

struct OracleLimits {
  std::size_t max_processes = 8;
  std::size_t max_processors = 4;
  Tick max_burst = 128;
};

/// Naive reference simulator: advances the clock one tick at a time with
/// no event queue, applying the same dispatch rules as simulate(). Only for
/// small instances; throws InvalidArgument beyond `limits`.
Trace oracle_simulate(std::span<const ProcessSpec> workload, const SimConfig& config,
                      const OracleLimits& limits = {});

struct Divergence {
  ProcessId process = 0;
  std::string field;  // "completion" or "first_dispatch"
  std::optional<Tick> lhs;
  std::optional<Tick> rhs;
};

struct Verdict {
  std::optional<Divergence> divergence;

  bool equal() const { return !divergence; }
  std::string describe() const;
};

/// Equal iff every process has the same completion and first dispatch.
/// Throws InvalidArgument when the traces come from different workloads.
Verdict equivalence_check(const Trace& lhs, const Trace& rhs);

}  // namespace schedsim
