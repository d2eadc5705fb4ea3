#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "schedsim/batch.hpp"
#include "schedsim/config.hpp"
#include "schedsim/types.hpp"

namespace schedsim {

/// Mutable per-process state during a run. `slot` indices used below are
/// positions in the workload.
struct ProcessRuntime {
  ProcessSpec spec;
  Tick remaining = 0;
  Tick executed = 0;
  std::optional<Tick> first_dispatch;
  std::optional<Tick> completion;
  std::optional<std::size_t> bound_processor;  // last processor it ran on
  bool pinned = false;

  explicit ProcessRuntime(const ProcessSpec& s) : spec(s), remaining(s.burst) {}
};

struct Dispatch {
  std::size_t slot = 0;
  Tick slice = 0;
  bool pinned = false;
  std::optional<Tick> quantum;  // the round's quantum, for the timeline
};

struct DispatchContext {
  std::span<const ProcessRuntime> runtimes;
  std::size_t live_count = 0;  // arrived and not completed, running ones included
  std::size_t processors = 1;
  Tick now = 0;
};

enum class StagingAction { Completed, Staged, Requeued };

/// Ready-queue discipline plugged into the event kernel. The kernel owns
/// time and processors; the policy owns the ready structures.
class DispatchPolicy {
 public:
  virtual ~DispatchPolicy() = default;

  virtual void on_arrival(std::size_t slot) = 0;
  /// A slice ended with work left. Returns where the process went.
  virtual StagingAction on_preempted(std::size_t slot) = 0;
  /// Next process for a free processor, or nothing to run.
  virtual std::optional<Dispatch> select_next(const DispatchContext& ctx) = 0;
  /// Rounds formed so far (batch policies).
  virtual std::vector<Batch> batches() const { return {}; }
};

std::unique_ptr<DispatchPolicy> make_policy(const SimConfig& config);

/// Accounts a finished slice: the process either completes at `now` or goes
/// back to the policy for a later round.
StagingAction on_quantum_expiry(ProcessRuntime& runtime, std::size_t slot, Tick slice, Tick now,
                                DispatchPolicy& policy);

}  // namespace schedsim
