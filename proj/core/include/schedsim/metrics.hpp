#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "schedsim/trace.hpp"
#include "schedsim/types.hpp"

namespace schedsim {

/// Exact average; rounding happens only when rendered.
using Rational = boost::rational<std::int64_t>;

struct ProcessMetrics {
  ProcessId id = 0;
  Tick turnaround = 0;  // completion - arrival
  Tick waiting = 0;     // turnaround - burst
  Tick response = 0;    // first dispatch - arrival

  friend bool operator==(const ProcessMetrics&, const ProcessMetrics&) = default;
};

struct AggregateMetrics {
  std::size_t process_count = 0;
  Rational avg_turnaround;
  Rational avg_waiting;
  Rational avg_response;
  Tick makespan = 0;
  std::size_t processors = 1;
  std::vector<Rational> processor_utilization;  // busy / makespan, per processor
  Rational cpu_utilization;                     // busy / (makespan * processors)
  Rational throughput;                          // completed processes per tick
  std::size_t context_switches = 0;
  std::size_t preemptions = 0;
};

/// One row per process in workload order. Throws InvalidArgument when the
/// trace is incomplete or was produced from a different workload.
std::vector<ProcessMetrics> per_process_metrics(const Trace& trace,
                                                std::span<const ProcessSpec> workload);

AggregateMetrics aggregate(std::span<const ProcessMetrics> rows, const Trace& trace);

/// 100 * (1 - candidate / baseline).
Rational savings_percent(const Rational& candidate_total, const Rational& baseline_total);

/// Fixed-point rendering, half away from zero, "." separator.
std::string format_fixed(const Rational& value, int decimals);

}  // namespace schedsim
