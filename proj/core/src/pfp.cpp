#include "schedsim/pfp.hpp"

#include <numeric>
#include <string>

#include "schedsim/error.hpp"

namespace schedsim {

namespace {

void check_range(const char* field, int value, int lo, int hi) {
  if (value < lo || value > hi) {
    throw InvalidArgument(std::string(field) + " out of range " + std::to_string(lo) + ".." +
                          std::to_string(hi));
  }
}

}  // namespace

void validate(const StaticPfp& pfp) {
  check_range("pfp1", pfp.process_class, 1, 2);
  check_range("pfp2", pfp.interrupt_type, 1, 3);
  check_range("pfp3", pfp.execution_class, 1, 3);
  check_range("pfp5", pfp.organization, 1, 2);
  check_range("pfp6", pfp.dependency, 1, 4);
}

int pfp4_from_progress(Tick executed, Tick total) {
  if (total < 1) throw InvalidArgument("pfp4: total burst must be positive");
  if (executed < 0 || executed >= total) {
    throw InvalidArgument("pfp4: executed must lie in [0, total)");
  }
  // executed/total <= 1/3  <=>  3*executed <= total
  if (3 * executed <= total) return 3;
  if (3 * executed <= 2 * total) return 2;
  return 1;
}

namespace {

CohortTotals totals_of(std::span<const Tick> cohort_remaining) {
  return {std::accumulate(cohort_remaining.begin(), cohort_remaining.end(), Tick{0}), cohort_remaining.size()};
}

}  // namespace

int pfp7_from_shortness(Tick remaining, const CohortTotals& cohort) {
  if (cohort.count == 0) throw InvalidArgument("pfp7: empty cohort");
  return remaining * static_cast<Tick>(cohort.count) <= cohort.sum ? 1 : 2;
}

int pfp7_from_shortness(Tick remaining, std::span<const Tick> cohort_remaining) {
  return pfp7_from_shortness(remaining, totals_of(cohort_remaining));
}

PfpVector assemble_pfp_vector(const StaticPfp& statics, Tick executed, Tick total,
                              std::span<const Tick> cohort_remaining) {
  return assemble_pfp_vector(statics, executed, total, totals_of(cohort_remaining));
}

PfpVector assemble_pfp_vector(const StaticPfp& statics, Tick executed, Tick total, const CohortTotals& cohort) {
  validate(statics);
  PfpVector v;
  v.points = {statics.process_class,
              statics.interrupt_type,
              statics.execution_class,
              pfp4_from_progress(executed, total),
              statics.organization,
              statics.dependency,
              pfp7_from_shortness(total - executed, cohort)};
  return v;
}

PriorityLevel priority_level(int value) {
  if (value < kMinPriorityValue || value > kMaxPriorityValue) {
    throw InvalidArgument("priority value " + std::to_string(value) + " outside 7..19");
  }
  // 7-8 -> 1, 9-10 -> 2, ..., 15-16 -> 5, 17-19 -> 6
  const int level = (value - kMinPriorityValue) / 2 + 1;
  return PriorityLevel{level > 6 ? 6 : level};
}

Tick time_quantum(std::span<const Tick> remaining) {
  if (remaining.empty()) throw InvalidArgument("time quantum of an empty round");
  const Tick sum = std::accumulate(remaining.begin(), remaining.end(), Tick{0});
  // Non-negative operands, so integer division is the floor.
  return sum / static_cast<Tick>(remaining.size());
}

}  // namespace schedsim
