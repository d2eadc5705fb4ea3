#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>

#include "schedsim/engine.hpp"
#include "schedsim/error.hpp"
#include "schedsim/policy.hpp"
#include "schedsim/validation.hpp"
#include "support.hpp"

using namespace schedsim;
using test::completions;
using test::config_for;
using test::proc;

namespace {

std::vector<ProcessRuntime> runtimes_for(const std::vector<ProcessSpec>& w) {
  std::vector<ProcessRuntime> out;
  for (const auto& p : w) out.emplace_back(p);
  return out;
}

// Structural checks written against the trace alone, separate from the
// library's own invariant checker.
void require_structure(const Trace& t, const std::vector<ProcessSpec>& w, const SimConfig& c) {
  for (std::size_t cpu = 0; cpu < t.processors; ++cpu) {
    auto segs = t.segments_on(cpu);
    std::sort(segs.begin(), segs.end(), [](const auto& a, const auto& b) { return a.start < b.start; });
    for (std::size_t i = 1; i < segs.size(); ++i) REQUIRE(segs[i - 1].end <= segs[i].start);
  }
  std::map<Tick, std::vector<ProcessId>> at;
  for (const auto& s : t.segments) {
    REQUIRE(s.length() > 0);
    for (Tick x = s.start; x < s.end; ++x) at[x].push_back(s.process);
  }
  for (auto& [tick, ids] : at) {
    std::sort(ids.begin(), ids.end());
    REQUIRE(std::adjacent_find(ids.begin(), ids.end()) == ids.end());
    REQUIRE(ids.size() <= c.processors);
  }
  for (const auto& p : w) {
    const auto segs = t.segments_of(p.id);
    Tick sum = 0;
    for (const auto& s : segs) {
      sum += s.length();
      REQUIRE(s.start >= p.arrival);
      if (c.policy == Policy::RoundRobin) REQUIRE(s.length() <= c.rr_quantum);
    }
    REQUIRE(sum == p.burst);
    if (!is_preemptive(c.policy)) REQUIRE(segs.size() == 1);
    const ProcessOutcome* o = t.find(p.id);
    REQUIRE(o != nullptr);
    REQUIRE(o->completion == segs.back().end);
    REQUIRE(o->first_dispatch == segs.front().start);
    const Tick turnaround = *o->completion - p.arrival;
    const Tick waiting = turnaround - p.burst;
    REQUIRE(waiting >= 0);
    REQUIRE(waiting + p.burst == turnaround);
  }
}

}  // namespace

TEST_SUITE("sim-engine") {
  TEST_CASE("round robin on case 1, one processor") {
    const auto fx = paper_case(1).uni;
    const Trace t = simulate(fx.workload, config_for(Policy::RoundRobin, 1));
    const auto m = test::metrics_of(t, fx.workload);
    CHECK(format_fixed(m.avg_waiting, 2) == "192.00");
    CHECK(format_fixed(m.avg_turnaround, 2) == "261.40");
    CHECK(t.segments.front() == TimelineSegment{0, 1, 0, 25, 25});
  }

  TEST_CASE("cspdabrr on case 1, two processors") {
    const auto fx = paper_case(1).multi;
    const Trace t = simulate(fx.workload, config_for(Policy::Cspdabrr, 2));
    CHECK(completions(t) == std::vector<Tick>{40, 55, 115, 136, 211});
    CHECK(format_fixed(test::metrics_of(t, fx.workload).avg_turnaround, 2) == "111.40");
  }

  TEST_CASE("a lone process runs once from zero") {
    for (Policy policy : kAllPolicies) {
      for (std::size_t m : {1u, 2u, 3u}) {
        INFO(policy_key(policy), " m=", m);
        const std::vector<ProcessSpec> w{proc(1, 0, 23, {}, 1)};
        const Trace t = simulate(w, config_for(policy, m));
        const std::vector<TimelineSegment> expected{{0, 1, 0, 23, t.segments.front().quantum}};
        CHECK(t.segments == expected);
        const auto rows = per_process_metrics(t, w);
        CHECK(rows[0].turnaround == 23);
        CHECK(rows[0].waiting == 0);
        CHECK(rows[0].response == 0);
      }
    }
  }

  TEST_CASE("a lone round robin process longer than the quantum is sliced without a gap") {
    const std::vector<ProcessSpec> w{proc(1, 0, 37)};
    const Trace t = simulate(w, config_for(Policy::RoundRobin, 1));
    const std::vector<TimelineSegment> expected{{0, 1, 0, 25, 25}, {0, 1, 25, 37, 25}};
    CHECK(t.segments == expected);
    CHECK(t.context_switches == 0);
  }

  TEST_CASE("priority on case 4, one processor") {
    const auto fx = paper_case(4).uni;
    const Trace t = simulate(fx.workload, config_for(Policy::Priority, 1));
    CHECK(completions(t) == std::vector<Tick>{27, 306, 274, 219, 137});
    CHECK(format_fixed(test::metrics_of(t, fx.workload).avg_waiting, 2) == "126.60");
  }

  TEST_CASE("cspdabrr waiting on case 2, two processors") {
    const auto fx = paper_case(2).multi;
    const Trace t = simulate(fx.workload, config_for(Policy::Cspdabrr, 2));
    std::vector<Tick> waiting;
    for (const auto& r : per_process_metrics(t, fx.workload)) waiting.push_back(r.waiting);
    CHECK(waiting == std::vector<Tick>{32, 51, 6, 0, 0});
  }

  TEST_CASE("fcfs, sjf and dabrr on case 1") {
    const auto w = paper_case(1).uni.workload;
    // All arrive at 0 with ascending bursts, so FCFS and SJF coincide.
    const std::vector<Tick> serial{40, 95, 155, 245, 347};
    CHECK(completions(simulate(w, config_for(Policy::Fcfs, 1))) == serial);
    CHECK(completions(simulate(w, config_for(Policy::Sjf, 1))) == serial);
    // Quantum 69: P4 and P5 need a second round with quantum floor(54/2) = 27.
    CHECK(completions(simulate(w, config_for(Policy::Dabrr, 1))) == std::vector<Tick>{40, 95, 155, 314, 347});
  }

  TEST_CASE("fcfs and sjf differ under staggered arrivals") {
    const std::vector<ProcessSpec> w{proc(1, 0, 10), proc(2, 1, 8), proc(3, 2, 2)};
    CHECK(completions(simulate(w, config_for(Policy::Fcfs, 1))) == std::vector<Tick>{10, 18, 20});
    CHECK(completions(simulate(w, config_for(Policy::Sjf, 1))) == std::vector<Tick>{10, 20, 12});
  }

  TEST_CASE("idle gap before a late arrival") {
    const std::vector<ProcessSpec> w{proc(1, 0, 3), proc(2, 10, 4)};
    for (Policy policy : {Policy::Fcfs, Policy::RoundRobin, Policy::Dabrr, Policy::Cspdabrr}) {
      const Trace t = simulate(w, config_for(policy, 1));
      CHECK(completions(t) == std::vector<Tick>{3, 14});
      CHECK(t.makespan == 14);
      CHECK(t.busy_ticks() == 7);
    }
  }

  TEST_CASE("context switch cost delays a segment on a processor that ran someone else") {
    const std::vector<ProcessSpec> w{proc(1, 0, 5), proc(2, 0, 5)};
    SimConfig c = config_for(Policy::Fcfs, 1);
    c.context_switch_cost = 2;
    const Trace t = simulate(w, c);
    CHECK(completions(t) == std::vector<Tick>{5, 12});
    CHECK(t.context_switches == 1);
    CHECK(test::first_dispatches(t) == std::vector<Tick>{0, 7});

    // Resuming the same process on the same processor is free.
    SimConfig rr = config_for(Policy::RoundRobin, 1);
    rr.rr_quantum = 2;
    rr.context_switch_cost = 3;
    const std::vector<ProcessSpec> one{proc(1, 0, 5)};
    const Trace solo = simulate(one, rr);
    CHECK(completions(solo) == std::vector<Tick>{5});
    CHECK(solo.context_switches == 0);
    CHECK(solo.segments.size() == 3);
  }

  TEST_CASE("invalid workloads are rejected") {
    const SimConfig c = config_for(Policy::Fcfs, 1);
    CHECK_THROWS_AS(simulate(std::vector<ProcessSpec>{}, c), InvalidWorkload);
    CHECK_THROWS_AS(simulate(std::vector<ProcessSpec>{proc(1, 0, 0)}, c), InvalidWorkload);
    CHECK_THROWS_AS(simulate(std::vector<ProcessSpec>{proc(1, -1, 3)}, c), InvalidWorkload);
    CHECK_THROWS_AS(simulate(std::vector<ProcessSpec>{proc(1, 0, 3), proc(1, 0, 4)}, c), InvalidWorkload);
    CHECK_THROWS_AS(simulate(std::vector<ProcessSpec>{proc(1, 0, 3, StaticPfp{1, 1, 1, 3, 1})}, c),
                    InvalidWorkload);
    CHECK_THROWS_AS(simulate(std::vector<ProcessSpec>{proc(1, 0, 3)}, config_for(Policy::Priority, 1)),
                    InvalidWorkload);
    CHECK_THROWS_AS(simulate(std::vector<ProcessSpec>{proc(1, 0, 3)}, config_for(Policy::Fcfs, 0)),
                    InvalidArgument);
  }

  TEST_CASE("select_next heads the second round of case 4 with P2") {
    const auto w = paper_case(4).uni.workload;
    auto rts = runtimes_for(w);
    rts[0].remaining = 0;
    rts[0].executed = 27;
    rts[0].completion = 27;
    auto policy = make_policy(config_for(Policy::Cspdabrr, 1));
    for (std::size_t slot = 1; slot < 5; ++slot) policy->on_arrival(slot);
    const auto d = policy->select_next(DispatchContext{rts, 4, 1, 27});
    REQUIRE(d.has_value());
    CHECK(d->slot == 1);
    CHECK(d->slice == 32);
    CHECK(d->quantum == Tick{69});
    CHECK_FALSE(d->pinned);
  }

  TEST_CASE("select_next for round robin slices at the quantum") {
    const std::vector<ProcessSpec> w{proc(1, 0, 40)};
    auto rts = runtimes_for(w);
    auto policy = make_policy(config_for(Policy::RoundRobin, 1));
    CHECK_FALSE(policy->select_next(DispatchContext{rts, 0, 1, 0}).has_value());
    policy->on_arrival(0);
    const auto d = policy->select_next(DispatchContext{rts, 1, 1, 0});
    REQUIRE(d.has_value());
    CHECK(d->slot == 0);
    CHECK(d->slice == 25);
    CHECK_FALSE(d->pinned);
  }

  TEST_CASE("a level-6 process longer than the quantum gets its own processor") {
    const auto fx = paper_case(1).multi;
    const Trace t = simulate(fx.workload, config_for(Policy::Cspdabrr, 2));
    const auto p5 = t.segments_of(5);
    REQUIRE(p5.size() == 1);
    CHECK(p5[0].start == 109);
    CHECK(p5[0].end == 211);

    SimConfig off = config_for(Policy::Cspdabrr, 2);
    off.dedication_enabled = false;
    const Trace t_off = simulate(fx.workload, off);
    CHECK(completions(t_off) == completions(t));
  }

  TEST_CASE("on_quantum_expiry stages or completes") {
    const auto w1 = paper_case(1).uni.workload;
    auto policy = make_policy(config_for(Policy::Cspdabrr, 1));
    ProcessRuntime p4(w1[3]);
    CHECK(on_quantum_expiry(p4, 3, 69, 178, *policy) == StagingAction::Staged);
    CHECK(p4.remaining == 21);
    CHECK(p4.executed == 69);
    CHECK_FALSE(p4.completion.has_value());

    const auto w3 = paper_case(3).uni.workload;
    ProcessRuntime p5(w3[4]);
    CHECK(on_quantum_expiry(p5, 4, 37, 124, *policy) == StagingAction::Staged);
    CHECK(p5.remaining == 46);

    ProcessRuntime exact(proc(7, 0, 12));
    CHECK(on_quantum_expiry(exact, 0, 12, 12, *policy) == StagingAction::Completed);
    CHECK(exact.remaining == 0);
    CHECK(exact.completion == Tick{12});

    auto rr = make_policy(config_for(Policy::RoundRobin, 1));
    ProcessRuntime again(proc(8, 0, 30));
    CHECK(on_quantum_expiry(again, 0, 25, 25, *rr) == StagingAction::Requeued);
    CHECK(again.remaining == 5);

    ProcessRuntime too_long(proc(9, 0, 4));
    CHECK_THROWS_AS(on_quantum_expiry(too_long, 0, 5, 5, *rr), InvalidArgument);
  }

  TEST_CASE("random traces satisfy the structural properties and are deterministic") {
    std::mt19937_64 rng(2024);
    for (int iter = 0; iter < 600; ++iter) {
      RandomWorkloadLimits limits{6, 30, 40};
      const auto w = random_workload(rng, limits);
      for (Policy policy : kAllPolicies) {
        SimConfig c = config_for(policy, std::uniform_int_distribution<std::size_t>(1, 3)(rng));
        c.rr_quantum = std::uniform_int_distribution<Tick>(1, 8)(rng);
        c.dedication_enabled = std::bernoulli_distribution(0.5)(rng);
        c.bonding_mode = std::bernoulli_distribution(0.5)(rng) ? BondingMode::RunToCompletion
                                                               : BondingMode::KeepBondingWithQuantum;
        const Trace t = simulate(w, c);
        require_structure(t, w, c);
        REQUIRE(check_trace_invariants(t, w, c).empty());
        REQUIRE(simulate(w, c) == t);
      }
    }
  }

  TEST_CASE("non-preemptive schedules scale with time") {
    std::mt19937_64 rng(99);
    for (int iter = 0; iter < 300; ++iter) {
      const auto w = random_workload(rng, RandomWorkloadLimits{6, 20, 20});
      const Tick k = std::uniform_int_distribution<Tick>(2, 9)(rng);
      auto scaled = w;
      for (auto& p : scaled) {
        p.arrival *= k;
        p.burst *= k;
      }
      for (Policy policy : {Policy::Priority, Policy::Fcfs, Policy::Sjf}) {
        for (std::size_t m : {1u, 2u}) {
          auto base = completions(simulate(w, config_for(policy, m)));
          for (auto& x : base) x *= k;
          REQUIRE(completions(simulate(scaled, config_for(policy, m))) == base);
        }
      }
    }
  }

  TEST_CASE("priority order follows the external priority, lower first") {
    const std::vector<ProcessSpec> w{proc(1, 0, 5, {}, 3), proc(2, 0, 5, {}, 1), proc(3, 0, 5, {}, 2)};
    CHECK(completions(simulate(w, config_for(Policy::Priority, 1))) == std::vector<Tick>{15, 5, 10});
  }

  TEST_CASE("bonded processes keep their processor") {
    // Two processes on two processors are bonded from the start.
    const std::vector<ProcessSpec> w{proc(1, 0, 10), proc(2, 0, 30)};
    SimConfig c = config_for(Policy::Cspdabrr, 2);
    const Trace whole = simulate(w, c);
    CHECK(whole.segments_of(2) == std::vector<TimelineSegment>{{1, 2, 0, 30, 20}});

    c.bonding_mode = BondingMode::KeepBondingWithQuantum;
    const Trace sliced = simulate(w, c);
    // Quantum floor(40/2) = 20; at 20 processor 0 is idle, yet P2 returns to 1.
    CHECK(sliced.segments_of(2) == std::vector<TimelineSegment>{{1, 2, 0, 20, 20}, {1, 2, 20, 30, 10}});
    CHECK(completions(sliced) == completions(whole));
  }

  TEST_CASE("bonding only applies with more than one processor") {
    const std::vector<ProcessSpec> w{proc(1, 0, 30)};
    const Trace t = simulate(w, config_for(Policy::Cspdabrr, 1));
    CHECK(t.segments.size() == 1);
    const std::vector<ProcessSpec> two{proc(1, 0, 10), proc(2, 0, 30)};
    const Trace u = simulate(two, config_for(Policy::Cspdabrr, 1));
    CHECK(u.segments_of(2).size() == 2);
  }
}
