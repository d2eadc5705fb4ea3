#pragma once

#include <string>

#include "schedsim/comparison.hpp"
#include "schedsim/metrics.hpp"

namespace schedsim {

/// Header, one row per policy (table order), then a "Total" row. Columns:
/// policy, waiting per case, waiting total, turnaround per case, turnaround
/// total. Two decimals, "." separator, LF line endings.
std::string export_metrics_csv(const ComparisonTable& table);

/// "metric,value" rows for a single run.
std::string export_metrics_csv(const AggregateMetrics& metrics);

/// RFC 4180 field quoting.
std::string csv_field(std::string_view raw);

}  // namespace schedsim
