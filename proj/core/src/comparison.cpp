#include "schedsim/comparison.hpp"

#include <algorithm>
#include <set>

#include "schedsim/error.hpp"

namespace schedsim {

namespace {

constexpr Policy kTableOrder[] = {Policy::RoundRobin, Policy::Priority, Policy::Cspdabrr,
                                  Policy::Fcfs,       Policy::Sjf,      Policy::Dabrr};

}  // namespace

std::span<const Policy> table_policy_order() { return kTableOrder; }

std::vector<Rational> ComparisonTable::column_waiting_totals() const {
  std::vector<Rational> totals(columns.size() + 1);
  for (const auto& r : rows) {
    for (std::size_t c = 0; c < columns.size(); ++c) totals[c] += r.waiting[c];
    totals.back() += r.waiting_total;
  }
  return totals;
}

std::vector<Rational> ComparisonTable::column_turnaround_totals() const {
  std::vector<Rational> totals(columns.size() + 1);
  for (const auto& r : rows) {
    for (std::size_t c = 0; c < columns.size(); ++c) totals[c] += r.turnaround[c];
    totals.back() += r.turnaround_total;
  }
  return totals;
}

const ComparisonRow* ComparisonTable::row(Policy policy) const {
  for (const auto& r : rows) {
    if (r.policy == policy) return &r;
  }
  return nullptr;
}

ComparisonTable comparison_table(const RunMap& runs, Environment environment,
                                 std::span<const Policy> policies,
                                 std::span<const std::string> columns) {
  ComparisonTable table;
  table.environment = environment;
  table.columns.assign(columns.begin(), columns.end());

  std::string missing;
  for (Policy policy : policies) {
    ComparisonRow row;
    row.policy = policy;
    for (const auto& column : columns) {
      auto it = runs.find(RunKey{policy, column, environment});
      if (it == runs.end()) {
        missing += (missing.empty() ? "" : ", ") + std::string(policy_key(policy)) + "/" + column +
                   "/" + std::string(environment_key(environment));
        continue;
      }
      row.waiting.push_back(it->second.avg_waiting);
      row.turnaround.push_back(it->second.avg_turnaround);
      row.waiting_total += it->second.avg_waiting;
      row.turnaround_total += it->second.avg_turnaround;
    }
    table.rows.push_back(std::move(row));
  }
  if (!missing.empty()) throw IncompleteInput("comparison table is missing runs: " + missing);
  return table;
}

ComparisonTable comparison_table(const RunMap& runs, Environment environment) {
  std::set<Policy> present;
  std::set<std::string> columns;
  for (const auto& [key, _] : runs) {
    if (key.environment != environment) continue;
    present.insert(key.policy);
    columns.insert(key.column);
  }
  std::vector<Policy> policies;
  for (Policy p : kTableOrder) {
    if (present.count(p)) policies.push_back(p);
  }
  const std::vector<std::string> cols(columns.begin(), columns.end());
  return comparison_table(runs, environment, policies, cols);
}

}  // namespace schedsim
