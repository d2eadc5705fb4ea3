#pragma once

#include <array>
#include <span>

#include "schedsim/types.hpp"

namespace schedsim {

/// The seven feature points of one process at one batch formation.
struct PfpVector {
  std::array<int, 7> points{};  // points[0] is pfp1, points[6] is pfp7

  int total() const noexcept {
    int sum = 0;
    for (int p : points) sum += p;
    return sum;
  }

  int operator[](std::size_t feature) const { return points.at(feature - 1); }

  friend bool operator==(const PfpVector&, const PfpVector&) = default;
};

inline constexpr int kMinPriorityValue = 7;
inline constexpr int kMaxPriorityValue = 19;

/// Priority band 1 (most urgent) .. 6.
struct PriorityLevel {
  int level = 1;
  friend auto operator<=>(const PriorityLevel&, const PriorityLevel&) = default;
};

/// Progress band: 3 up to one third done, 2 up to two thirds, 1 beyond.
/// Compared as exact fractions.
int pfp4_from_progress(Tick executed, Tick total);

/// 1 when `remaining` is at most the mean of the cohort, else 2.
int pfp7_from_shortness(Tick remaining, std::span<const Tick> cohort_remaining);

/// Sum and size of a cohort's remaining bursts, for callers that score many
/// members of the same cohort.
struct CohortTotals {
  Tick sum = 0;
  std::size_t count = 0;
};
int pfp7_from_shortness(Tick remaining, const CohortTotals& cohort);

PfpVector assemble_pfp_vector(const StaticPfp& statics, Tick executed, Tick total,
                              std::span<const Tick> cohort_remaining);
PfpVector assemble_pfp_vector(const StaticPfp& statics, Tick executed, Tick total, const CohortTotals& cohort);

PriorityLevel priority_level(int value);

/// floor(sum / count) over the remaining bursts of a round.
Tick time_quantum(std::span<const Tick> remaining);

}  // namespace schedsim
