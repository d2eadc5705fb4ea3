#include "schedsim/metrics.hpp"

#include <cstdlib>

#include "schedsim/error.hpp"

namespace schedsim {

std::vector<ProcessMetrics> per_process_metrics(const Trace& trace,
                                                std::span<const ProcessSpec> workload) {
  if (trace.processes.size() != workload.size()) {
    throw InvalidArgument("trace and workload differ in process count");
  }
  std::vector<ProcessMetrics> rows;
  rows.reserve(workload.size());
  for (const auto& spec : workload) {
    const ProcessOutcome* out = trace.find(spec.id);
    const std::string name = "P" + std::to_string(spec.id);
    if (out == nullptr || out->arrival != spec.arrival || out->burst != spec.burst) {
      throw InvalidArgument("trace does not match workload at " + name);
    }
    if (!out->completion || !out->first_dispatch) {
      throw InvalidArgument("trace is incomplete: " + name + " never finished");
    }
    ProcessMetrics m;
    m.id = spec.id;
    m.turnaround = *out->completion - spec.arrival;
    m.waiting = m.turnaround - spec.burst;
    m.response = *out->first_dispatch - spec.arrival;
    rows.push_back(m);
  }
  return rows;
}

AggregateMetrics aggregate(std::span<const ProcessMetrics> rows, const Trace& trace) {
  if (rows.empty()) throw InvalidArgument("no process metrics to aggregate");
  AggregateMetrics agg;
  const auto n = static_cast<std::int64_t>(rows.size());
  std::int64_t turnaround = 0;
  std::int64_t waiting = 0;
  std::int64_t response = 0;
  for (const auto& r : rows) {
    turnaround += r.turnaround;
    waiting += r.waiting;
    response += r.response;
  }
  agg.process_count = rows.size();
  agg.avg_turnaround = Rational(turnaround, n);
  agg.avg_waiting = Rational(waiting, n);
  agg.avg_response = Rational(response, n);
  agg.makespan = trace.makespan;
  agg.processors = trace.processors;
  agg.context_switches = trace.context_switches;
  agg.preemptions = trace.preemptions;
  if (trace.makespan > 0) {
    for (std::size_t p = 0; p < trace.processors; ++p) {
      agg.processor_utilization.push_back(Rational(trace.busy_ticks(p), trace.makespan));
    }
    agg.cpu_utilization = Rational(trace.busy_ticks(),
                                   trace.makespan * static_cast<std::int64_t>(trace.processors));
    agg.throughput = Rational(n, trace.makespan);
  }
  return agg;
}

Rational savings_percent(const Rational& candidate_total, const Rational& baseline_total) {
  if (baseline_total <= 0) throw InvalidArgument("savings against a non-positive baseline");
  return Rational(100) * (Rational(1) - candidate_total / baseline_total);
}

std::string format_fixed(const Rational& value, int decimals) {
  if (decimals < 0 || decimals > 9) throw InvalidArgument("unsupported decimal count");
  __int128 scale = 1;
  for (int i = 0; i < decimals; ++i) scale *= 10;
  const __int128 num = value.numerator();
  const __int128 den = value.denominator();  // always positive
  const bool negative = num < 0;
  const __int128 scaled = (negative ? -num : num) * scale;
  __int128 q = scaled / den;
  if (2 * (scaled % den) >= den) ++q;

  const auto whole = static_cast<std::int64_t>(q / scale);
  const auto frac = static_cast<std::int64_t>(q % scale);
  std::string out = (negative && q != 0) ? "-" : "";
  out += std::to_string(whole);
  if (decimals > 0) {
    std::string digits = std::to_string(frac);
    out += '.';
    out += std::string(static_cast<std::size_t>(decimals) - digits.size(), '0');
    out += digits;
  }
  return out;
}

}  // namespace schedsim
