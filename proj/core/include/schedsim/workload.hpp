#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "schedsim/config.hpp"
#include "schedsim/types.hpp"

namespace schedsim {

/// Optional run settings carried by a workload file.
struct ConfigFragment {
  std::optional<Policy> policy;
  std::optional<std::size_t> processors;
  std::optional<Tick> rr_quantum;
  std::optional<Tick> context_switch_cost;
  std::optional<bool> dedication_enabled;
  std::optional<BondingMode> bonding_mode;

  SimConfig apply_to(SimConfig base) const;
  friend bool operator==(const ConfigFragment&, const ConfigFragment&) = default;
};

struct WorkloadDocument {
  std::string name;
  std::vector<ProcessSpec> processes;
  ConfigFragment defaults;

  friend bool operator==(const WorkloadDocument&, const WorkloadDocument&) = default;
};

/// Parses the JSON workload format:
///
///   {"name": "...",
///    "processes": [{"id": 1, "arrival": 0, "burst": 40, "priority": 3,
///                   "pfp": {"pfp1": "user", "pfp2": 2, ...}}],
///    "defaults": {"policy": "cspdabrr", "processors": 2, ...}}
///
/// Feature points accept raw integers or labels (pfp1 system/user, pfp2
/// none/software/hardware, pfp3 real-time/medium/anonymous, pfp5
/// fully-scheduled/half-scheduled, pfp6 none/software/hardware/both).
/// Missing feature points default to 1; "id" defaults to position + 1.
/// Unknown keys are rejected. Throws ParseError on bad syntax and
/// ValidationError on bad content.
WorkloadDocument parse_workload(std::string_view text);

/// Canonical form: integers for every feature point, stable key order.
std::string serialize_workload(const WorkloadDocument& doc);

/// Reads and parses a file; I/O failures surface as ParseError at 0:0.
WorkloadDocument load_workload_file(const std::filesystem::path& path);

}  // namespace schedsim
