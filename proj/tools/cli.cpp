#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "schedsim/comparison.hpp"
#include "schedsim/csv.hpp"
#include "schedsim/engine.hpp"
#include "schedsim/error.hpp"
#include "schedsim/fixtures.hpp"
#include "schedsim/gantt.hpp"
#include "schedsim/metrics.hpp"
#include "schedsim/oracle.hpp"
#include "schedsim/validation.hpp"
#include "schedsim/workload.hpp"

namespace schedsim::cli {

namespace fs = std::filesystem;

namespace {

/// Raised inside subcommands to leave with a given exit code.
struct Exit {
  int code;
  std::string message;
};

std::string paint(const Streams& io, std::string_view text, const char* ansi) {
  if (!io.color) return std::string(text);
  return std::string("\033[") + ansi + "m" + std::string(text) + "\033[0m";
}

std::string pass_label(const Streams& io) { return paint(io, "PASS", "32"); }
std::string fail_label(const Streams& io) { return paint(io, "FAIL", "31"); }
std::string erratum_label(const Streams& io) { return paint(io, "ERRATUM", "33"); }

Policy policy_or_exit(const std::string& key) {
  if (auto p = parse_policy(key)) return *p;
  throw Exit{kUsage, "unknown policy \"" + key + "\" (fcfs, sjf, rr, priority, dabrr, cspdabrr)"};
}

WorkloadDocument load_or_exit(const std::string& path) {
  try {
    return load_workload_file(path);
  } catch (const ParseError& e) {
    throw Exit{kUsage, path + ":" + std::to_string(e.line()) + ":" + std::to_string(e.column()) + ": " + e.what()};
  } catch (const ValidationError& e) {
    throw Exit{kUsage, path + ": " + e.what()};
  }
}

Trace simulate_or_exit(const std::vector<ProcessSpec>& workload, const SimConfig& config) {
  try {
    return simulate(workload, config);
  } catch (const InvalidWorkload& e) {
    throw Exit{kUsage, std::string("invalid workload: ") + e.what()};
  }
}

void write_file_or_exit(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f || !(f << content)) throw Exit{kUsage, "cannot write " + path};
}

std::string join(const std::vector<Tick>& values) {
  std::string out;
  for (Tick v : values) out += (out.empty() ? "" : " ") + std::to_string(v);
  return out;
}

// ---------------------------------------------------------------- run

struct RunOptions {
  std::string workload;
  std::string policy;
  std::size_t processors = 0;
  Tick quantum = 0;
  Tick context_switch = -1;
  bool gantt = false;
  bool no_dedication = false;
  std::string bonding_mode;
  std::string csv;
};

SimConfig resolve_config(const WorkloadDocument& doc, const RunOptions& o) {
  SimConfig config = doc.defaults.apply_to(SimConfig{});
  if (!o.policy.empty()) config.policy = policy_or_exit(o.policy);
  if (o.processors > 0) config.processors = o.processors;
  if (o.quantum > 0) {
    if (config.policy != Policy::RoundRobin) {
      throw Exit{kUsage, "--quantum only applies to rr; " + std::string(policy_key(config.policy)) +
                             " computes its own quantum"};
    }
    config.rr_quantum = o.quantum;
  }
  if (o.context_switch >= 0) config.context_switch_cost = o.context_switch;
  if (o.no_dedication) config.dedication_enabled = false;
  if (!o.bonding_mode.empty()) {
    auto mode = parse_bonding_mode(o.bonding_mode);
    if (!mode) throw Exit{kUsage, "unknown bonding mode \"" + o.bonding_mode + "\""};
    config.bonding_mode = *mode;
  }
  return config;
}

int cmd_run(const RunOptions& o, const Streams& io) {
  const WorkloadDocument doc = load_or_exit(o.workload);
  const SimConfig config = resolve_config(doc, o);
  const Trace trace = simulate_or_exit(doc.processes, config);
  const auto rows = per_process_metrics(trace, doc.processes);
  const AggregateMetrics agg = aggregate(rows, trace);

  auto& out = io.out;
  out << "workload " << (doc.name.empty() ? fs::path(o.workload).stem().string() : doc.name) << "\n";
  out << "policy " << policy_key(config.policy) << "  processors " << config.processors;
  if (config.policy == Policy::RoundRobin) out << "  quantum " << config.rr_quantum;
  out << "\n\n";
  out << std::setw(6) << "id" << std::setw(9) << "arrival" << std::setw(7) << "burst" << std::setw(12)
      << "completion" << std::setw(12) << "turnaround" << std::setw(9) << "waiting" << std::setw(10)
      << "response" << "\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& spec = doc.processes[i];
    out << std::setw(6) << ("P" + std::to_string(spec.id)) << std::setw(9) << spec.arrival << std::setw(7)
        << spec.burst << std::setw(12) << *trace.find(spec.id)->completion << std::setw(12)
        << rows[i].turnaround << std::setw(9) << rows[i].waiting << std::setw(10) << rows[i].response << "\n";
  }
  out << "\n";
  out << "avg_waiting " << format_fixed(agg.avg_waiting, 2) << "\n";
  out << "avg_turnaround " << format_fixed(agg.avg_turnaround, 2) << "\n";
  out << "avg_response " << format_fixed(agg.avg_response, 2) << "\n";
  out << "makespan " << agg.makespan << "\n";
  out << "cpu_utilization " << format_fixed(agg.cpu_utilization, 2) << "\n";
  out << "throughput " << format_fixed(agg.throughput, 4) << "\n";
  out << "preemptions " << agg.preemptions << "\n";
  out << "context_switches " << agg.context_switches << "\n";
  if (o.gantt) {
    out << "\n" << render_gantt(trace, GanttStyle{true});
  }
  if (!o.csv.empty()) write_file_or_exit(o.csv, export_metrics_csv(agg));
  return kOk;
}

// ---------------------------------------------------------------- compare

struct CompareOptions {
  std::string path;
  std::size_t processors = 1;
  std::string policies = "rr,priority,cspdabrr";
  Tick quantum = 0;
  std::string csv;
};

std::vector<Policy> parse_policy_list(const std::string& list) {
  std::vector<Policy> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const Policy p = policy_or_exit(item);
    if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
  }
  if (out.empty()) throw Exit{kUsage, "--policies is empty"};
  return out;
}

void print_block(std::ostream& out, const ComparisonTable& table, bool waiting) {
  out << (waiting ? "Waiting time" : "Turnaround time") << "\n";
  out << std::left << std::setw(14) << "policy" << std::right;
  for (const auto& c : table.columns) out << std::setw(10) << c;
  out << std::setw(10) << "Total" << "\n";
  auto emit = [&](std::string_view label, const std::vector<Rational>& cells) {
    out << std::left << std::setw(14) << label << std::right;
    for (const auto& v : cells) out << std::setw(10) << format_fixed(v, 2);
    out << "\n";
  };
  for (const auto& row : table.rows) {
    auto cells = waiting ? row.waiting : row.turnaround;
    cells.push_back(waiting ? row.waiting_total : row.turnaround_total);
    emit(policy_display_name(row.policy), cells);
  }
  emit("Total", waiting ? table.column_waiting_totals() : table.column_turnaround_totals());
}

int cmd_compare(const CompareOptions& o, const Streams& io) {
  const std::vector<Policy> policies = parse_policy_list(o.policies);
  if (o.quantum > 0 && std::find(policies.begin(), policies.end(), Policy::RoundRobin) == policies.end()) {
    throw Exit{kUsage, "--quantum only applies to rr, which is not among --policies"};
  }
  std::vector<fs::path> files;
  std::error_code ec;
  if (fs::is_directory(o.path, ec)) {
    for (const auto& entry : fs::directory_iterator(o.path)) {
      if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) throw Exit{kUsage, "no .json workloads in " + o.path};
  } else {
    files.push_back(o.path);
  }

  const Environment env = o.processors <= 1 ? Environment::Uni : Environment::Multi;
  RunMap runs;
  std::vector<std::string> columns;
  for (const auto& file : files) {
    const WorkloadDocument doc = load_or_exit(file.string());
    const std::string label = doc.name.empty() ? file.stem().string() : doc.name;
    if (std::find(columns.begin(), columns.end(), label) != columns.end()) {
      throw Exit{kUsage, "two workloads share the name \"" + label + "\""};
    }
    columns.push_back(label);
    for (Policy policy : policies) {
      SimConfig config = doc.defaults.apply_to(SimConfig{});
      config.policy = policy;
      config.processors = o.processors;
      if (o.quantum > 0) config.rr_quantum = o.quantum;
      const Trace trace = simulate_or_exit(doc.processes, config);
      runs[RunKey{policy, label, env}] = aggregate(per_process_metrics(trace, doc.processes), trace);
    }
  }
  std::vector<Policy> ordered;
  for (Policy p : table_policy_order()) {
    if (std::find(policies.begin(), policies.end(), p) != policies.end()) ordered.push_back(p);
  }
  const ComparisonTable table = comparison_table(runs, env, ordered, columns);

  auto& out = io.out;
  out << "processors " << o.processors << "\n\n";
  print_block(out, table, true);
  out << "\n";
  print_block(out, table, false);
  if (const ComparisonRow* cs = table.row(Policy::Cspdabrr)) {
    bool header = false;
    for (const auto& row : table.rows) {
      if (row.policy == Policy::Cspdabrr || row.turnaround_total <= 0 || row.waiting_total <= 0) continue;
      if (!header) {
        out << "\n";
        header = true;
      }
      out << "CSPDABRR vs " << policy_display_name(row.policy) << ": saves "
          << format_fixed(savings_percent(cs->turnaround_total, row.turnaround_total), 1)
          << "% turnaround, " << format_fixed(savings_percent(cs->waiting_total, row.waiting_total), 1)
          << "% waiting\n";
    }
  }
  if (!o.csv.empty()) write_file_or_exit(o.csv, export_metrics_csv(table));
  return kOk;
}

// ---------------------------------------------------------------- paper-case

struct PaperCaseOptions {
  int id = 0;
  std::string env;
  std::string policy;
  std::string fixture = "as-printed-gantt";
  bool gantt = false;
  std::string export_workload;
};

int cmd_paper_case(const PaperCaseOptions& o, const Streams& io) {
  if (o.id < 1 || o.id > kPaperCaseCount) {
    throw Exit{kUsage, "case id must be 1..6, got " + std::to_string(o.id)};
  }
  const auto variant = parse_variant(o.fixture);
  if (!variant) throw Exit{kUsage, "unknown fixture \"" + o.fixture + "\" (as-printed-gantt, as-printed-table)"};
  std::vector<Environment> envs = {Environment::Uni, Environment::Multi};
  if (!o.env.empty()) {
    auto env = parse_environment(o.env);
    if (!env) throw Exit{kUsage, "--env must be uni or multi"};
    envs = {*env};
  }
  std::vector<Policy> policies = {Policy::RoundRobin, Policy::Priority, Policy::Cspdabrr};
  if (!o.policy.empty()) {
    const Policy p = policy_or_exit(o.policy);
    if (std::find(policies.begin(), policies.end(), p) == policies.end()) {
      throw Exit{kUsage, "embedded cases cover rr, priority and cspdabrr only"};
    }
    policies = {p};
  }

  const PaperCase pc = paper_case(o.id, *variant);
  if (!o.export_workload.empty()) {
    WorkloadDocument doc{case_label(o.id), pc.uni.workload, {}};
    write_file_or_exit(o.export_workload, serialize_workload(doc));
  }

  auto& out = io.out;
  bool all_pass = true;
  for (Environment env : envs) {
    const PaperCaseFixture& fx = pc.in(env);
    out << "case " << o.id << " (" << environment_key(env) << ", " << variant_key(*variant)
        << "): " << fx.title << "\n";
    for (const auto& note : fx.errata) out << erratum_label(io) << " input: " << note << "\n";
    for (Policy policy : policies) {
      const RegressionResult r = run_regression(fx, policy);
      out << "  " << policy_key(policy) << "\n";
      out << "    completions " << join(r.completions) << " | expected " << join(r.expected.completions) << "\n";
      out << "    avg_waiting " << format_fixed(r.metrics.avg_waiting, 2) << " (expected "
          << format_fixed(r.expected.avg_waiting, 2) << ", printed " << format_fixed(r.expected.printed_waiting, 2)
          << ")\n";
      out << "    avg_turnaround " << format_fixed(r.metrics.avg_turnaround, 2) << " (expected "
          << format_fixed(r.expected.avg_turnaround, 2) << ", printed "
          << format_fixed(r.expected.printed_turnaround, 2) << ")\n";
      if (!r.expected.erratum.empty()) out << "    " << erratum_label(io) << " " << r.expected.erratum << "\n";
      if (o.gantt) {
        SimConfig config = fx.config(policy);
        std::istringstream chart(render_gantt(simulate(fx.workload, config), GanttStyle{true}));
        std::string line;
        while (std::getline(chart, line)) out << "    | " << line << "\n";
      }
      out << "    " << (r.passed ? pass_label(io) : fail_label(io)) << "\n";
      all_pass = all_pass && r.passed;
    }
  }
  return all_pass ? kOk : kFailure;
}

// ---------------------------------------------------------------- validate

struct ValidateOptions {
  long long random = 1000;
  std::uint64_t seed = 7;
  bool flip_tie_break = false;
};

int cmd_validate(const ValidateOptions& o, const Streams& io) {
  if (o.random < 1) throw Exit{kUsage, "--random must be at least 1"};
  auto& out = io.out;
  SimConfig engine_base;
  if (o.flip_tie_break) {
    engine_base.tie_break = TieBreak::LongerRemainingFirst;
    out << "engine tie-break flipped (longer remaining first)\n";
  }

  bool ok = true;
  const auto regressions = run_paper_regressions(engine_base);
  std::size_t passed = 0;
  for (const auto& r : regressions) {
    if (r.passed) {
      ++passed;
    } else if (ok) {
      out << fail_label(io) << " " << r.describe() << "\n";
      ok = false;
    }
  }
  out << "case regressions: " << passed << "/" << regressions.size() << " passed\n";

  std::mt19937_64 rng(o.seed);
  std::size_t checks = 0;
  std::optional<OracleMismatch> first_mismatch;
  std::optional<std::string> first_violation;
  for (long long k = 0; k < o.random; ++k) {
    const auto workload = random_workload(rng);
    SimConfig base = engine_base;
    base.processors = std::uniform_int_distribution<std::size_t>(1, 2)(rng);
    base.rr_quantum = std::uniform_int_distribution<Tick>(1, 6)(rng);
    base.dedication_enabled = std::bernoulli_distribution(0.5)(rng);
    base.bonding_mode = std::bernoulli_distribution(0.5)(rng) ? BondingMode::RunToCompletion
                                                              : BondingMode::KeepBondingWithQuantum;
    for (Policy policy : kAllPolicies) {
      SimConfig engine_config = base;
      engine_config.policy = policy;
      SimConfig oracle_config = engine_config;
      oracle_config.tie_break = TieBreak::ShorterRemainingFirst;
      ++checks;
      if (auto m = compare_with_oracle(workload, engine_config, oracle_config); m && !first_mismatch) {
        first_mismatch = shrink(*m, oracle_config);
      }
      const Trace a = simulate(workload, engine_config);
      if (!(a == simulate(workload, engine_config)) && !first_violation) {
        first_violation = "non-deterministic trace for " + describe_workload(workload);
      }
      const auto violations = check_trace_invariants(a, workload, engine_config);
      if (!violations.empty() && !first_violation) {
        first_violation = violations.front() + " (" + std::string(policy_key(policy)) + ", m=" +
                          std::to_string(engine_config.processors) + ": " + describe_workload(workload) + ")";
      }
    }
  }
  out << "random oracle equivalence: " << o.random << " workloads, " << checks << " runs, seed " << o.seed
      << ": " << (first_mismatch ? "MISMATCH" : "all agree") << "\n";
  if (first_mismatch) {
    ok = false;
    out << "  counterexample (" << policy_key(first_mismatch->config.policy)
        << ", m=" << first_mismatch->config.processors << "): " << describe_workload(first_mismatch->workload)
        << "\n  engine vs oracle: " << first_mismatch->verdict.describe() << "\n";
  }
  out << "structural invariants and determinism: " << (first_violation ? "VIOLATED" : "ok") << "\n";
  if (first_violation) {
    ok = false;
    out << "  " << *first_violation << "\n";
  }
  out << (ok ? pass_label(io) : fail_label(io)) << "\n";
  return ok ? kOk : kFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, Streams io) {
  CLI::App app{"Deterministic CPU scheduling simulator", "schedsim"};
  app.require_subcommand(1);

  RunOptions run_opts;
  auto* run_cmd = app.add_subcommand("run", "Simulate one workload under one policy");
  run_cmd->add_option("workload", run_opts.workload, "Workload JSON file")->required();
  run_cmd->add_option("--policy", run_opts.policy, "fcfs|sjf|rr|priority|dabrr|cspdabrr");
  run_cmd->add_option("--processors", run_opts.processors, "Processor count")->check(CLI::PositiveNumber);
  run_cmd->add_option("--quantum", run_opts.quantum, "Static quantum (rr only)")->check(CLI::PositiveNumber);
  run_cmd->add_option("--context-switch", run_opts.context_switch, "Ticks per context switch")
      ->check(CLI::NonNegativeNumber);
  run_cmd->add_flag("--gantt", run_opts.gantt, "Print the timeline");
  run_cmd->add_flag("--no-dedication", run_opts.no_dedication, "Disable level-6 processor dedication");
  run_cmd->add_option("--bonding-mode", run_opts.bonding_mode, "run-to-completion|keep-bonding-with-quantum");
  run_cmd->add_option("--csv", run_opts.csv, "Write aggregate metrics CSV here");

  CompareOptions cmp_opts;
  auto* cmp_cmd = app.add_subcommand("compare", "Compare policies over one workload or a directory of them");
  cmp_cmd->add_option("workloads", cmp_opts.path, "Workload file or directory")->required();
  cmp_cmd->add_option("--processors", cmp_opts.processors, "Processor count")->check(CLI::PositiveNumber);
  cmp_cmd->add_option("--policies", cmp_opts.policies, "Comma-separated policy list");
  cmp_cmd->add_option("--quantum", cmp_opts.quantum, "Static quantum for rr")->check(CLI::PositiveNumber);
  cmp_cmd->add_option("--csv", cmp_opts.csv, "Write the comparison table CSV here");

  PaperCaseOptions pc_opts;
  auto* pc_cmd = app.add_subcommand("paper-case", "Replay an embedded evaluation case against its expected results");
  pc_cmd->add_option("id", pc_opts.id, "Case 1..6")->required();
  pc_cmd->add_option("--env", pc_opts.env, "uni|multi (default both)");
  pc_cmd->add_option("--policy", pc_opts.policy, "rr|priority|cspdabrr (default all three)");
  pc_cmd->add_option("--fixture", pc_opts.fixture, "as-printed-gantt|as-printed-table");
  pc_cmd->add_flag("--gantt", pc_opts.gantt, "Print timelines");
  pc_cmd->add_option("--export-workload", pc_opts.export_workload, "Write the case workload as JSON");

  ValidateOptions val_opts;
  auto* val_cmd = app.add_subcommand("validate", "Embedded-case regressions plus seeded oracle-equivalence checks");
  val_cmd->add_option("--random", val_opts.random, "Number of random workloads");
  val_cmd->add_option("--seed", val_opts.seed, "Random seed");
  val_cmd->add_flag("--flip-tie-break", val_opts.flip_tie_break,
                    "Self-test: run the engine with the tie-break reversed; must fail");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      io.out << app.help();
      return kOk;
    }
    io.err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (*run_cmd) return cmd_run(run_opts, io);
    if (*cmp_cmd) return cmd_compare(cmp_opts, io);
    if (*pc_cmd) return cmd_paper_case(pc_opts, io);
    if (*val_cmd) return cmd_validate(val_opts, io);
  } catch (const Exit& e) {
    if (!e.message.empty()) io.err << "error: " << e.message << "\n";
    return e.code;
  } catch (const std::exception& e) {
    io.err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace schedsim::cli
