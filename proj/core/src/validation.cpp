#include "schedsim/validation.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "schedsim/engine.hpp"
#include "schedsim/metrics.hpp"

namespace schedsim {

std::vector<ProcessSpec> random_workload(std::mt19937_64& rng, const RandomWorkloadLimits& limits) {
  auto uniform = [&rng](std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
  };
  const auto n = static_cast<std::size_t>(uniform(1, static_cast<std::int64_t>(limits.max_processes)));
  std::vector<ProcessSpec> out;
  for (std::size_t i = 0; i < n; ++i) {
    ProcessSpec p;
    p.id = static_cast<ProcessId>(i + 1);
    p.arrival = uniform(0, limits.max_arrival);
    p.burst = uniform(1, limits.max_burst);
    p.pfp = StaticPfp{static_cast<int>(uniform(1, 2)), static_cast<int>(uniform(1, 3)),
                      static_cast<int>(uniform(1, 3)), static_cast<int>(uniform(1, 2)),
                      static_cast<int>(uniform(1, 4))};
    p.external_priority = static_cast<int>(uniform(1, 5));
    out.push_back(p);
  }
  return out;
}

std::vector<std::string> check_trace_invariants(const Trace& trace,
                                                std::span<const ProcessSpec> workload,
                                                const SimConfig& config) {
  std::vector<std::string> violations;
  auto fail = [&violations](std::string msg) { violations.push_back(std::move(msg)); };

  for (std::size_t p = 0; p < trace.processors; ++p) {
    const auto segs = trace.segments_on(p);
    for (std::size_t i = 0; i + 1 < segs.size(); ++i) {
      if (segs[i].end > segs[i + 1].start) fail("overlap on cpu" + std::to_string(p));
    }
  }

  for (const auto& spec : workload) {
    const std::string name = "P" + std::to_string(spec.id);
    const ProcessOutcome* out = trace.find(spec.id);
    if (out == nullptr || !out->completion) {
      fail(name + " did not complete");
      continue;
    }
    auto segs = trace.segments_of(spec.id);
    std::sort(segs.begin(), segs.end(),
              [](const TimelineSegment& a, const TimelineSegment& b) { return a.start < b.start; });
    Tick sum = 0;
    for (std::size_t i = 0; i < segs.size(); ++i) {
      const auto& s = segs[i];
      sum += s.length();
      if (s.length() < 1) fail(name + " has an empty segment");
      if (s.start < spec.arrival) fail(name + " runs before it arrives");
      if (i + 1 < segs.size() && s.end > segs[i + 1].start) fail(name + " runs on two processors at once");
      if (config.policy == Policy::RoundRobin && s.length() > config.rr_quantum) {
        fail(name + " exceeds the RR quantum");
      }
      if ((config.policy == Policy::Cspdabrr || config.policy == Policy::Dabrr) && s.quantum &&
          s.length() > *s.quantum && s.end != *out->completion) {
        fail(name + " overran its round quantum without completing");
      }
    }
    if (sum != spec.burst) fail(name + " segment lengths sum to " + std::to_string(sum));
    if (!segs.empty()) {
      if (segs.back().end != *out->completion) fail(name + " completion differs from last segment end");
      if (out->first_dispatch != segs.front().start) fail(name + " first dispatch differs from first segment");
    }
    if (!is_preemptive(config.policy) && segs.size() != 1) fail(name + " was preempted by a non-preemptive policy");
  }

  if (config.context_switch_cost == 0) {
    Tick total = 0;
    for (const auto& spec : workload) total += spec.burst;
    if (trace.busy_ticks() != total) fail("busy time differs from total burst");

    std::vector<Tick> instants;
    for (const auto& s : trace.segments) instants.push_back(s.end);
    for (const auto& spec : workload) instants.push_back(spec.arrival);
    for (Tick t : instants) {
      std::size_t running = 0;
      for (const auto& s : trace.segments) running += (s.start <= t && t < s.end) ? 1 : 0;
      std::size_t live = 0;
      for (const auto& o : trace.processes) {
        live += (o.arrival <= t && o.completion && *o.completion > t) ? 1 : 0;
      }
      if (running < trace.processors && running != live) {
        fail("processor idle at t=" + std::to_string(t) + " while work is waiting");
        break;
      }
    }
  }

  try {
    for (const auto& m : per_process_metrics(trace, workload)) {
      const ProcessOutcome* out = trace.find(m.id);
      if (m.waiting < 0 || m.response < 0 || m.response > m.waiting) {
        fail("P" + std::to_string(m.id) + " has inconsistent waiting/response");
      }
      if (m.waiting + out->burst != m.turnaround) fail("P" + std::to_string(m.id) + " waiting + burst != turnaround");
    }
  } catch (const std::exception& e) {
    fail(e.what());
  }
  return violations;
}

std::optional<OracleMismatch> compare_with_oracle(std::span<const ProcessSpec> workload,
                                                  const SimConfig& engine_config,
                                                  const SimConfig& oracle_config) {
  const Trace engine = simulate(workload, engine_config);
  const Trace oracle = oracle_simulate(workload, oracle_config);
  Verdict verdict = equivalence_check(engine, oracle);
  if (verdict.equal()) return std::nullopt;
  return OracleMismatch{std::vector<ProcessSpec>(workload.begin(), workload.end()), engine_config,
                        verdict};
}

OracleMismatch shrink(OracleMismatch failure, const SimConfig& oracle_config) {
  auto still_fails = [&](const std::vector<ProcessSpec>& w) -> std::optional<OracleMismatch> {
    return compare_with_oracle(w, failure.config, oracle_config);
  };
  bool progress = true;
  while (progress) {
    progress = false;
    for (std::size_t i = 0; i < failure.workload.size() && failure.workload.size() > 1; ++i) {
      auto smaller = failure.workload;
      smaller.erase(smaller.begin() + static_cast<std::ptrdiff_t>(i));
      if (auto m = still_fails(smaller)) {
        failure = *m;
        progress = true;
        break;
      }
    }
    if (progress) continue;
    for (std::size_t i = 0; i < failure.workload.size() && !progress; ++i) {
      for (Tick ProcessSpec::*field : {&ProcessSpec::burst, &ProcessSpec::arrival}) {
        auto smaller = failure.workload;
        const Tick floor = field == &ProcessSpec::burst ? 1 : 0;
        if (smaller[i].*field <= floor) continue;
        smaller[i].*field -= 1;
        if (auto m = still_fails(smaller)) {
          failure = *m;
          progress = true;
          break;
        }
      }
    }
  }
  return failure;
}

std::string describe_workload(std::span<const ProcessSpec> workload) {
  std::ostringstream os;
  for (const auto& p : workload) {
    os << "P" << p.id << "(arrival " << p.arrival << ", burst " << p.burst << ", pfp "
       << p.pfp.process_class << p.pfp.interrupt_type << p.pfp.execution_class << p.pfp.organization
       << p.pfp.dependency << ", priority " << p.external_priority.value_or(0) << ") ";
  }
  std::string s = os.str();
  if (!s.empty()) s.pop_back();
  return s;
}

std::string RegressionResult::describe() const {
  std::ostringstream os;
  os << "case " << case_id << " " << environment_key(environment) << " " << policy_key(policy) << ": ";
  os << "waiting " << format_fixed(metrics.avg_waiting, 2) << " (expected "
     << format_fixed(expected.avg_waiting, 2) << "), turnaround " << format_fixed(metrics.avg_turnaround, 2)
     << " (expected " << format_fixed(expected.avg_turnaround, 2) << ")";
  if (!passed) {
    os << "; completions";
    for (Tick c : completions) os << " " << c;
    os << " vs";
    for (Tick c : expected.completions) os << " " << c;
    if (first_divergent_round) os << "; first divergent round " << *first_divergent_round;
  }
  return os.str();
}

RegressionResult run_regression(const PaperCaseFixture& fixture, Policy policy,
                                const SimConfig& engine_config) {
  SimConfig config = engine_config;
  config.policy = policy;
  config.processors = processors_for(fixture.environment);

  RegressionResult r;
  r.case_id = fixture.case_id;
  r.environment = fixture.environment;
  r.variant = fixture.variant;
  r.policy = policy;
  r.expected = fixture.expectation(policy);

  const Trace trace = simulate(fixture.workload, config);
  for (const auto& p : trace.processes) r.completions.push_back(*p.completion);
  const auto rows = per_process_metrics(trace, fixture.workload);
  r.metrics = aggregate(rows, trace);
  r.passed = r.completions == r.expected.completions && r.metrics.avg_waiting == r.expected.avg_waiting &&
             r.metrics.avg_turnaround == r.expected.avg_turnaround;

  if (!r.passed && (policy == Policy::Cspdabrr || policy == Policy::Dabrr)) {
    const Trace reference = simulate(fixture.workload, fixture.config(policy));
    const std::size_t rounds = std::min(trace.batches.size(), reference.batches.size());
    for (std::size_t i = 0; i < rounds; ++i) {
      if (!(trace.batches[i] == reference.batches[i])) {
        r.first_divergent_round = i + 1;
        break;
      }
    }
  }
  return r;
}

std::vector<RegressionResult> run_paper_regressions(const SimConfig& engine_config) {
  std::vector<RegressionResult> out;
  for (int id = 1; id <= kPaperCaseCount; ++id) {
    const PaperCase pc = paper_case(id);
    for (Environment env : {Environment::Uni, Environment::Multi}) {
      for (Policy policy : {Policy::RoundRobin, Policy::Priority, Policy::Cspdabrr}) {
        out.push_back(run_regression(pc.in(env), policy, engine_config));
      }
    }
  }
  return out;
}

}  // namespace schedsim
