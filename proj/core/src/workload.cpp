#include "schedsim/workload.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "schedsim/error.hpp"

namespace schedsim {

using nlohmann::json;

SimConfig ConfigFragment::apply_to(SimConfig base) const {
  if (policy) base.policy = *policy;
  if (processors) base.processors = *processors;
  if (rr_quantum) base.rr_quantum = *rr_quantum;
  if (context_switch_cost) base.context_switch_cost = *context_switch_cost;
  if (dedication_enabled) base.dedication_enabled = *dedication_enabled;
  if (bonding_mode) base.bonding_mode = *bonding_mode;
  return base;
}

namespace {

struct FeatureSpec {
  const char* key;
  int max;
  std::vector<std::pair<const char*, int>> labels;
};

const std::vector<FeatureSpec>& feature_specs() {
  static const std::vector<FeatureSpec> specs = {
      {"pfp1", 2, {{"system", 1}, {"user", 2}}},
      {"pfp2", 3, {{"none", 1}, {"software", 2}, {"hardware", 3}}},
      {"pfp3", 3, {{"real-time", 1}, {"medium", 2}, {"anonymous", 3}}},
      {"pfp5", 2, {{"fully-scheduled", 1}, {"half-scheduled", 2}}},
      {"pfp6", 4, {{"none", 1}, {"software", 2}, {"hardware", 3}, {"both", 4}}},
  };
  return specs;
}

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.count(key)) {
      throw ValidationError(where.empty() ? key : where + "." + key,
                            "unknown field \"" + key + "\"" + (where.empty() ? "" : " in " + where));
    }
  }
}

std::int64_t require_int(const json& v, const std::string& field) {
  if (!v.is_number_integer()) throw ValidationError(field, field + " must be an integer");
  return v.get<std::int64_t>();
}

int parse_feature(const json& v, const FeatureSpec& spec, const std::string& field) {
  int value = 0;
  if (v.is_string()) {
    const std::string label = v.get<std::string>();
    for (const auto& [name, mapped] : spec.labels) {
      if (label == name) value = mapped;
    }
    if (value == 0) throw ValidationError(field, std::string(spec.key) + " has unknown label \"" + label + "\"");
    return value;
  }
  value = static_cast<int>(require_int(v, field));
  if (value < 1 || value > spec.max) {
    throw ValidationError(field, std::string(spec.key) + " out of range 1.." + std::to_string(spec.max));
  }
  return value;
}

StaticPfp parse_pfp(const json& obj, const std::string& where) {
  if (!obj.is_object()) throw ValidationError(where, where + " must be an object");
  for (const auto& [key, _] : obj.items()) {
    if (key == "pfp4" || key == "pfp7") {
      throw ValidationError(where + "." + key, key + " is computed during simulation and cannot be given");
    }
  }
  reject_unknown(obj, {"pfp1", "pfp2", "pfp3", "pfp5", "pfp6"}, where);
  int values[5] = {1, 1, 1, 1, 1};
  const auto& specs = feature_specs();
  for (std::size_t i = 0; i < specs.size(); ++i) {
    if (obj.contains(specs[i].key)) {
      values[i] = parse_feature(obj.at(specs[i].key), specs[i], where + "." + specs[i].key);
    }
  }
  return StaticPfp{values[0], values[1], values[2], values[3], values[4]};
}

ProcessSpec parse_process(const json& obj, std::size_t index) {
  const std::string where = "processes[" + std::to_string(index) + "]";
  if (!obj.is_object()) throw ValidationError(where, where + " must be an object");
  reject_unknown(obj, {"id", "arrival", "burst", "priority", "pfp"}, where);

  ProcessSpec p;
  p.id = static_cast<ProcessId>(index + 1);
  if (obj.contains("id")) {
    const auto id = require_int(obj.at("id"), where + ".id");
    if (id < 1 || id > 1'000'000) throw ValidationError(where + ".id", where + ".id must be in 1..1000000");
    p.id = static_cast<ProcessId>(id);
  }
  if (!obj.contains("burst")) throw ValidationError(where + ".burst", where + " is missing \"burst\"");
  p.burst = require_int(obj.at("burst"), where + ".burst");
  if (p.burst < 1) throw ValidationError(where + ".burst", where + ".burst must be at least 1");
  if (obj.contains("arrival")) {
    p.arrival = require_int(obj.at("arrival"), where + ".arrival");
    if (p.arrival < 0) throw ValidationError(where + ".arrival", where + ".arrival must be >= 0");
  }
  if (obj.contains("priority")) {
    const auto prio = require_int(obj.at("priority"), where + ".priority");
    if (prio < 1) throw ValidationError(where + ".priority", where + ".priority must be positive");
    p.external_priority = static_cast<int>(prio);
  }
  if (obj.contains("pfp")) p.pfp = parse_pfp(obj.at("pfp"), where + ".pfp");
  return p;
}

ConfigFragment parse_defaults(const json& obj) {
  if (!obj.is_object()) throw ValidationError("defaults", "defaults must be an object");
  reject_unknown(obj,
                 {"policy", "processors", "rr_quantum", "context_switch_cost", "dedication",
                  "bonding_mode"},
                 "defaults");
  ConfigFragment f;
  if (obj.contains("policy")) {
    const auto& v = obj.at("policy");
    if (!v.is_string()) throw ValidationError("defaults.policy", "defaults.policy must be a string");
    f.policy = parse_policy(v.get<std::string>());
    if (!f.policy) throw ValidationError("defaults.policy", "unknown policy \"" + v.get<std::string>() + "\"");
  }
  if (obj.contains("processors")) {
    const auto m = require_int(obj.at("processors"), "defaults.processors");
    if (m < 1) throw ValidationError("defaults.processors", "defaults.processors must be at least 1");
    f.processors = static_cast<std::size_t>(m);
  }
  if (obj.contains("rr_quantum")) {
    f.rr_quantum = require_int(obj.at("rr_quantum"), "defaults.rr_quantum");
    if (*f.rr_quantum < 1) throw ValidationError("defaults.rr_quantum", "defaults.rr_quantum must be at least 1");
  }
  if (obj.contains("context_switch_cost")) {
    f.context_switch_cost = require_int(obj.at("context_switch_cost"), "defaults.context_switch_cost");
    if (*f.context_switch_cost < 0) {
      throw ValidationError("defaults.context_switch_cost", "defaults.context_switch_cost must be >= 0");
    }
  }
  if (obj.contains("dedication")) {
    if (!obj.at("dedication").is_boolean()) {
      throw ValidationError("defaults.dedication", "defaults.dedication must be a boolean");
    }
    f.dedication_enabled = obj.at("dedication").get<bool>();
  }
  if (obj.contains("bonding_mode")) {
    const auto& v = obj.at("bonding_mode");
    if (v.is_string()) f.bonding_mode = parse_bonding_mode(v.get<std::string>());
    if (!f.bonding_mode) {
      throw ValidationError("defaults.bonding_mode",
                            "defaults.bonding_mode must be run-to-completion or keep-bonding-with-quantum");
    }
  }
  return f;
}

std::pair<std::size_t, std::size_t> line_and_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  const std::size_t stop = std::min(byte > 0 ? byte - 1 : 0, text.size());
  for (std::size_t i = 0; i < stop; ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

}  // namespace

WorkloadDocument parse_workload(std::string_view text) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto [line, column] = line_and_column(text, e.byte);
    throw ParseError("syntax error at line " + std::to_string(line) + ", column " +
                         std::to_string(column) + ": " + e.what(),
                     line, column);
  }
  if (!root.is_object()) throw ValidationError("", "workload must be a JSON object");
  reject_unknown(root, {"name", "processes", "defaults"}, "");

  WorkloadDocument doc;
  if (root.contains("name")) {
    if (!root.at("name").is_string()) throw ValidationError("name", "name must be a string");
    doc.name = root.at("name").get<std::string>();
  }
  if (!root.contains("processes") || !root.at("processes").is_array()) {
    throw ValidationError("processes", "workload needs a \"processes\" array");
  }
  const json& procs = root.at("processes");
  if (procs.empty()) throw ValidationError("processes", "processes must not be empty");
  std::set<ProcessId> seen;
  for (std::size_t i = 0; i < procs.size(); ++i) {
    ProcessSpec p = parse_process(procs[i], i);
    if (!seen.insert(p.id).second) {
      throw ValidationError("processes[" + std::to_string(i) + "].id",
                            "duplicate id " + std::to_string(p.id));
    }
    doc.processes.push_back(p);
  }
  if (root.contains("defaults")) doc.defaults = parse_defaults(root.at("defaults"));
  return doc;
}

std::string serialize_workload(const WorkloadDocument& doc) {
  nlohmann::ordered_json root;
  if (!doc.name.empty()) root["name"] = doc.name;
  root["processes"] = nlohmann::ordered_json::array();
  for (const auto& p : doc.processes) {
    nlohmann::ordered_json obj;
    obj["id"] = p.id;
    obj["arrival"] = p.arrival;
    obj["burst"] = p.burst;
    if (p.external_priority) obj["priority"] = *p.external_priority;
    obj["pfp"] = {{"pfp1", p.pfp.process_class},
                  {"pfp2", p.pfp.interrupt_type},
                  {"pfp3", p.pfp.execution_class},
                  {"pfp5", p.pfp.organization},
                  {"pfp6", p.pfp.dependency}};
    root["processes"].push_back(obj);
  }
  const ConfigFragment& d = doc.defaults;
  if (d != ConfigFragment{}) {
    nlohmann::ordered_json defs = nlohmann::ordered_json::object();
    if (d.policy) defs["policy"] = std::string(policy_key(*d.policy));
    if (d.processors) defs["processors"] = *d.processors;
    if (d.rr_quantum) defs["rr_quantum"] = *d.rr_quantum;
    if (d.context_switch_cost) defs["context_switch_cost"] = *d.context_switch_cost;
    if (d.dedication_enabled) defs["dedication"] = *d.dedication_enabled;
    if (d.bonding_mode) defs["bonding_mode"] = std::string(bonding_mode_key(*d.bonding_mode));
    root["defaults"] = defs;
  }
  return root.dump(2) + "\n";
}

WorkloadDocument load_workload_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path.string(), 0, 0);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_workload(buf.str());
}

}  // namespace schedsim
