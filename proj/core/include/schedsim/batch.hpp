#pragma once

#include <span>
#include <vector>

#include "schedsim/pfp.hpp"
#include "schedsim/types.hpp"

namespace schedsim {

/// Ordering among entries with equal priority value. The shorter-first rule
/// is the algorithm's; the reversed rule only exists so the validation suite
/// can prove it detects a broken tie-break.
enum class TieBreak { ShorterRemainingFirst, LongerRemainingFirst };

struct BatchEntry {
  ProcessId id = 0;
  int priority_value = 0;  // 0 for batches ordered without feature points
  Tick remaining = 0;
  PfpVector pfp;

  friend bool operator==(const BatchEntry&, const BatchEntry&) = default;
};

/// One scheduling round: the ordered candidates and the quantum they share.
struct Batch {
  std::vector<BatchEntry> entries;
  Tick quantum = 0;
  Tick formed_at = 0;

  friend bool operator==(const Batch&, const Batch&) = default;
};

struct BatchCandidate {
  const ProcessSpec* spec = nullptr;
  Tick executed = 0;
};

/// Computes feature points over the candidate cohort, sorts by
/// (priority value, remaining, id) and sets quantum = floor(mean remaining).
Batch form_batch(std::span<const BatchCandidate> candidates, Tick now,
                 TieBreak tie_break = TieBreak::ShorterRemainingFirst);

/// Average-burst round without feature points: sorted by (remaining, id).
Batch form_average_burst_batch(std::span<const BatchCandidate> candidates, Tick now);

}  // namespace schedsim
