#pragma once

#include <compare>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "schedsim/config.hpp"
#include "schedsim/metrics.hpp"

namespace schedsim {

/// Identifies one run in a cross-policy comparison. `column` is the case
/// label ("Case-I") or a workload name.
struct RunKey {
  Policy policy = Policy::Cspdabrr;
  std::string column;
  Environment environment = Environment::Uni;

  friend auto operator<=>(const RunKey&, const RunKey&) = default;
};

using RunMap = std::map<RunKey, AggregateMetrics>;

struct ComparisonRow {
  Policy policy = Policy::Cspdabrr;
  std::vector<Rational> waiting;     // one per column
  std::vector<Rational> turnaround;  // one per column
  Rational waiting_total;
  Rational turnaround_total;
};

/// Policies down, columns across, waiting block then turnaround block.
struct ComparisonTable {
  Environment environment = Environment::Uni;
  std::vector<std::string> columns;
  std::vector<ComparisonRow> rows;

  /// The bottom "Total" row: sums over policies per column.
  std::vector<Rational> column_waiting_totals() const;
  std::vector<Rational> column_turnaround_totals() const;
  const ComparisonRow* row(Policy policy) const;
};

/// Throws IncompleteInput listing every missing (policy, column) cell.
ComparisonTable comparison_table(const RunMap& runs, Environment environment,
                                 std::span<const Policy> policies,
                                 std::span<const std::string> columns);

/// Policies and columns taken from the keys present for `environment`;
/// policies in table order (Round Robin, Priority, CSPDABRR, then the rest).
ComparisonTable comparison_table(const RunMap& runs, Environment environment);

/// Row order used by the published comparison tables.
std::span<const Policy> table_policy_order();

}  // namespace schedsim
