#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "schedsim/batch.hpp"
#include "schedsim/types.hpp"

namespace schedsim {

enum class Policy { Fcfs, Sjf, RoundRobin, Priority, Dabrr, Cspdabrr };

inline constexpr Policy kAllPolicies[] = {Policy::Fcfs,     Policy::Sjf,   Policy::RoundRobin,
                                          Policy::Priority, Policy::Dabrr, Policy::Cspdabrr};

/// What a bonded process (uncompleted count <= processors) is allowed to do.
enum class BondingMode {
  RunToCompletion,        // never preempted again
  KeepBondingWithQuantum  // keeps its processor but still yields at each quantum
};

struct SimConfig {
  Policy policy = Policy::Cspdabrr;
  std::size_t processors = 1;
  Tick rr_quantum = 25;
  Tick context_switch_cost = 0;
  bool dedication_enabled = true;
  BondingMode bonding_mode = BondingMode::RunToCompletion;
  TieBreak tie_break = TieBreak::ShorterRemainingFirst;
};

/// Throws InvalidArgument on a nonsensical configuration.
void validate(const SimConfig& config);

/// Lower-case key used on the command line and in workload files ("rr").
std::string_view policy_key(Policy policy);
/// Display name used in comparison tables ("Round Robin").
std::string_view policy_display_name(Policy policy);
std::optional<Policy> parse_policy(std::string_view key);

std::string_view bonding_mode_key(BondingMode mode);
std::optional<BondingMode> parse_bonding_mode(std::string_view key);

bool is_preemptive(Policy policy);

/// The two evaluation settings: one processor, or the two-processor machine.
enum class Environment { Uni, Multi };

inline std::size_t processors_for(Environment env) { return env == Environment::Uni ? 1 : 2; }
std::string_view environment_key(Environment env);
std::optional<Environment> parse_environment(std::string_view key);

}  // namespace schedsim
