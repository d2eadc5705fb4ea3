#include "schedsim/csv.hpp"

namespace schedsim {

std::string csv_field(std::string_view raw) {
  if (raw.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(raw);
  std::string out = "\"";
  for (char c : raw) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string export_metrics_csv(const ComparisonTable& table) {
  std::string out = "policy";
  for (const auto& c : table.columns) out += "," + csv_field("waiting_" + c);
  out += ",waiting_total";
  for (const auto& c : table.columns) out += "," + csv_field("turnaround_" + c);
  out += ",turnaround_total\n";
  if (table.rows.empty()) return out;

  auto emit = [&out](std::string_view label, const std::vector<Rational>& waiting,
                     const std::vector<Rational>& turnaround) {
    out += csv_field(label);
    for (const auto& v : waiting) out += "," + format_fixed(v, 2);
    for (const auto& v : turnaround) out += "," + format_fixed(v, 2);
    out += "\n";
  };
  for (const auto& row : table.rows) {
    auto waiting = row.waiting;
    waiting.push_back(row.waiting_total);
    auto turnaround = row.turnaround;
    turnaround.push_back(row.turnaround_total);
    emit(policy_display_name(row.policy), waiting, turnaround);
  }
  emit("Total", table.column_waiting_totals(), table.column_turnaround_totals());
  return out;
}

std::string export_metrics_csv(const AggregateMetrics& m) {
  std::string out = "metric,value\n";
  out += "processes," + std::to_string(m.process_count) + "\n";
  out += "avg_waiting," + format_fixed(m.avg_waiting, 2) + "\n";
  out += "avg_turnaround," + format_fixed(m.avg_turnaround, 2) + "\n";
  out += "avg_response," + format_fixed(m.avg_response, 2) + "\n";
  out += "makespan," + std::to_string(m.makespan) + "\n";
  out += "processors," + std::to_string(m.processors) + "\n";
  out += "cpu_utilization," + format_fixed(m.cpu_utilization, 2) + "\n";
  for (std::size_t p = 0; p < m.processor_utilization.size(); ++p) {
    out += "utilization_cpu" + std::to_string(p) + "," + format_fixed(m.processor_utilization[p], 2) + "\n";
  }
  // Throughput is a small fraction per tick; two decimals would flatten it.
  out += "throughput," + format_fixed(m.throughput, 4) + "\n";
  out += "preemptions," + std::to_string(m.preemptions) + "\n";
  out += "context_switches," + std::to_string(m.context_switches) + "\n";
  return out;
}

}  // namespace schedsim
