#pragma once

#include <cstdint>
#include <optional>

namespace schedsim {

/// Simulation time unit. Every instant, burst and quantum is a whole tick.
using Tick = std::int64_t;

using ProcessId = std::int32_t;

/// Per-process priority feature points that do not change between rounds.
/// Lower values mean more urgent; the ranges are fixed by the feature
/// definitions.
struct StaticPfp {
  int process_class = 1;    // pfp1: system=1, user=2
  int interrupt_type = 1;   // pfp2: none=1, software=2, hardware=3
  int execution_class = 1;  // pfp3: real-time=1, medium=2, anonymous=3
  int organization = 1;     // pfp5: fully scheduled=1, half scheduled=2
  int dependency = 1;       // pfp6: none=1, software=2, hardware=3, both=4

  friend bool operator==(const StaticPfp&, const StaticPfp&) = default;
};

/// Throws InvalidArgument naming the first field outside its range.
void validate(const StaticPfp& pfp);

struct ProcessSpec {
  ProcessId id = 0;
  Tick arrival = 0;
  Tick burst = 1;
  StaticPfp pfp;
  std::optional<int> external_priority;  // Priority baseline only; lower runs first

  friend bool operator==(const ProcessSpec&, const ProcessSpec&) = default;
};

}  // namespace schedsim
