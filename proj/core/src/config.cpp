#include "schedsim/config.hpp"

#include <algorithm>
#include <cctype>
#include <string>

#include "schedsim/error.hpp"

namespace schedsim {

void validate(const SimConfig& config) {
  if (config.processors < 1) throw InvalidArgument("processors must be at least 1");
  if (config.rr_quantum < 1) throw InvalidArgument("rr_quantum must be at least 1");
  if (config.context_switch_cost < 0) throw InvalidArgument("context_switch_cost must be >= 0");
}

std::string_view policy_key(Policy policy) {
  switch (policy) {
    case Policy::Fcfs: return "fcfs";
    case Policy::Sjf: return "sjf";
    case Policy::RoundRobin: return "rr";
    case Policy::Priority: return "priority";
    case Policy::Dabrr: return "dabrr";
    case Policy::Cspdabrr: return "cspdabrr";
  }
  return "?";
}

std::string_view policy_display_name(Policy policy) {
  switch (policy) {
    case Policy::Fcfs: return "FCFS";
    case Policy::Sjf: return "SJF";
    case Policy::RoundRobin: return "Round Robin";
    case Policy::Priority: return "Priority";
    case Policy::Dabrr: return "DABRR";
    case Policy::Cspdabrr: return "CSPDABRR";
  }
  return "?";
}

std::optional<Policy> parse_policy(std::string_view key) {
  std::string lower(key);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "round-robin" || lower == "roundrobin") return Policy::RoundRobin;
  for (Policy p : kAllPolicies) {
    if (policy_key(p) == lower) return p;
  }
  return std::nullopt;
}

std::string_view bonding_mode_key(BondingMode mode) {
  return mode == BondingMode::RunToCompletion ? "run-to-completion" : "keep-bonding-with-quantum";
}

std::optional<BondingMode> parse_bonding_mode(std::string_view key) {
  if (key == "run-to-completion") return BondingMode::RunToCompletion;
  if (key == "keep-bonding-with-quantum") return BondingMode::KeepBondingWithQuantum;
  return std::nullopt;
}

bool is_preemptive(Policy policy) {
  return policy == Policy::RoundRobin || policy == Policy::Dabrr || policy == Policy::Cspdabrr;
}

std::string_view environment_key(Environment env) {
  return env == Environment::Uni ? "uni" : "multi";
}

std::optional<Environment> parse_environment(std::string_view key) {
  if (key == "uni") return Environment::Uni;
  if (key == "multi") return Environment::Multi;
  return std::nullopt;
}

}  // namespace schedsim
