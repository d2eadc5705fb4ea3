#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "schedsim/batch.hpp"
#include "schedsim/types.hpp"

namespace schedsim {

/// A contiguous run of one process on one processor, [start, end).
struct TimelineSegment {
  std::size_t processor = 0;
  ProcessId process = 0;
  Tick start = 0;
  Tick end = 0;
  std::optional<Tick> quantum;  // slice bound in force; empty for run-to-completion policies

  Tick length() const noexcept { return end - start; }
  friend bool operator==(const TimelineSegment&, const TimelineSegment&) = default;
};

struct ProcessOutcome {
  ProcessId id = 0;
  Tick arrival = 0;
  Tick burst = 0;
  std::optional<Tick> first_dispatch;
  std::optional<Tick> completion;

  friend bool operator==(const ProcessOutcome&, const ProcessOutcome&) = default;
};

/// Everything a run produced. Metrics are derived from this alone.
struct Trace {
  std::size_t processors = 1;
  std::vector<TimelineSegment> segments;  // sorted by (start, processor)
  std::vector<ProcessOutcome> processes;  // workload order
  std::vector<Batch> batches;             // batch policies only, in formation order
  std::size_t preemptions = 0;
  std::size_t context_switches = 0;
  Tick makespan = 0;

  const ProcessOutcome* find(ProcessId id) const;
  std::vector<TimelineSegment> segments_of(ProcessId id) const;
  std::vector<TimelineSegment> segments_on(std::size_t processor) const;
  Tick busy_ticks(std::size_t processor) const;
  Tick busy_ticks() const;

  friend bool operator==(const Trace&, const Trace&) = default;
};

}  // namespace schedsim
