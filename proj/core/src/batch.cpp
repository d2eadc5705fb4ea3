#include "schedsim/batch.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>

#include "schedsim/error.hpp"

namespace schedsim {

namespace {

std::vector<Tick> remaining_of(std::span<const BatchCandidate> candidates) {
  std::vector<Tick> out;
  out.reserve(candidates.size());
  for (const auto& c : candidates) {
    if (c.spec == nullptr) throw InvalidArgument("batch candidate without a process");
    if (c.executed < 0 || c.executed >= c.spec->burst) {
      throw InvalidArgument("batch candidate P" + std::to_string(c.spec->id) +
                            " has no remaining burst");
    }
    out.push_back(c.spec->burst - c.executed);
  }
  return out;
}

}  // namespace

Batch form_batch(std::span<const BatchCandidate> candidates, Tick now, TieBreak tie_break) {
  if (candidates.empty()) throw InvalidArgument("cannot form a batch from no candidates");
  const std::vector<Tick> remaining = remaining_of(candidates);
  const CohortTotals cohort{std::accumulate(remaining.begin(), remaining.end(), Tick{0}), remaining.size()};

  Batch batch;
  batch.formed_at = now;
  batch.quantum = time_quantum(remaining);
  batch.entries.reserve(candidates.size());
  for (const auto& c : candidates) {
    BatchEntry e;
    e.id = c.spec->id;
    e.remaining = c.spec->burst - c.executed;
    e.pfp = assemble_pfp_vector(c.spec->pfp, c.executed, c.spec->burst, cohort);
    e.priority_value = e.pfp.total();
    batch.entries.push_back(e);
  }

  const bool shorter_first = tie_break == TieBreak::ShorterRemainingFirst;
  std::sort(batch.entries.begin(), batch.entries.end(),
            [shorter_first](const BatchEntry& a, const BatchEntry& b) {
              if (a.priority_value != b.priority_value) return a.priority_value < b.priority_value;
              if (a.remaining != b.remaining) {
                return shorter_first ? a.remaining < b.remaining : a.remaining > b.remaining;
              }
              return a.id < b.id;
            });
  return batch;
}

Batch form_average_burst_batch(std::span<const BatchCandidate> candidates, Tick now) {
  if (candidates.empty()) throw InvalidArgument("cannot form a batch from no candidates");
  const std::vector<Tick> cohort = remaining_of(candidates);

  Batch batch;
  batch.formed_at = now;
  batch.quantum = time_quantum(cohort);
  for (const auto& c : candidates) {
    batch.entries.push_back(BatchEntry{c.spec->id, 0, c.spec->burst - c.executed, {}});
  }
  std::sort(batch.entries.begin(), batch.entries.end(), [](const BatchEntry& a, const BatchEntry& b) {
    return std::tie(a.remaining, a.id) < std::tie(b.remaining, b.id);
  });
  return batch;
}

}  // namespace schedsim
