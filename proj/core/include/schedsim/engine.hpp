#pragma once

#include <span>

#include "schedsim/config.hpp"
#include "schedsim/trace.hpp"
#include "schedsim/types.hpp"

namespace schedsim {

/// Throws InvalidWorkload if the workload cannot run under `config`
/// (empty, duplicate ids, non-positive burst, Priority without priorities)
/// and InvalidArgument if `config` itself is unusable.
void validate_workload(std::span<const ProcessSpec> workload, const SimConfig& config);

/// Runs the workload to completion on `config.processors` identical
/// processors. Deterministic: identical inputs give identical traces.
///
/// At every instant the kernel first enqueues arrivals (ascending id), then
/// retires slices ending now (ascending processor), then lets free
/// processors dispatch in ascending index order.
Trace simulate(std::span<const ProcessSpec> workload, const SimConfig& config);

}  // namespace schedsim
