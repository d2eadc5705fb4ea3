#include <doctest.h>

#include <filesystem>
#include <random>
#include <sstream>

#include "schedsim/batch.hpp"
#include "schedsim/comparison.hpp"
#include "schedsim/csv.hpp"
#include "schedsim/error.hpp"
#include "schedsim/gantt.hpp"
#include "schedsim/validation.hpp"
#include "schedsim/workload.hpp"
#include "support.hpp"

using namespace schedsim;
using test::proc;

namespace {

const std::filesystem::path kData = SCHEDSIM_DATA_DIR;

ComparisonTable case_table(Environment env) {
  RunMap runs;
  for (int id = 1; id <= kPaperCaseCount; ++id) {
    const auto fx = paper_case(id).in(env);
    for (Policy policy : {Policy::RoundRobin, Policy::Priority, Policy::Cspdabrr}) {
      runs[RunKey{policy, case_label(id), env}] =
          test::metrics_of(simulate(fx.workload, fx.config(policy)), fx.workload);
    }
  }
  return comparison_table(runs, env);
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

template <typename F>
std::string validation_field(F&& f) {
  try {
    f();
  } catch (const ValidationError& e) {
    return e.field() + ": " + e.what();
  }
  return "no error";
}

}  // namespace

TEST_SUITE("workload-io") {
  TEST_CASE("minimal document") {
    const auto doc = parse_workload(R"({"processes": [{"id": 1, "arrival": 0, "burst": 10,
        "pfp": {"pfp1": 1, "pfp2": 1, "pfp3": 1, "pfp5": 1, "pfp6": 1}}]})");
    REQUIRE(doc.processes.size() == 1);
    CHECK(doc.processes[0] == proc(1, 0, 10));
    CHECK(doc.name.empty());
    CHECK(doc.defaults == ConfigFragment{});
  }

  TEST_CASE("defaults and labels") {
    const auto doc = parse_workload(R"({
      "name": "mixed",
      "processes": [
        {"burst": 4, "pfp": {"pfp1": "user", "pfp2": "hardware", "pfp3": "anonymous",
                             "pfp5": "half-scheduled", "pfp6": "both"}},
        {"arrival": 3, "burst": 2, "priority": 7}
      ],
      "defaults": {"policy": "round-robin", "processors": 2, "rr_quantum": 4,
                   "context_switch_cost": 1, "dedication": false,
                   "bonding_mode": "keep-bonding-with-quantum"}
    })");
    CHECK(doc.name == "mixed");
    CHECK(doc.processes[0] == proc(1, 0, 4, StaticPfp{2, 3, 3, 2, 4}));
    CHECK(doc.processes[1] == proc(2, 3, 2, {}, 7));
    const SimConfig c = doc.defaults.apply_to(SimConfig{});
    CHECK(c.policy == Policy::RoundRobin);
    CHECK(c.processors == 2);
    CHECK(c.rr_quantum == 4);
    CHECK(c.context_switch_cost == 1);
    CHECK_FALSE(c.dedication_enabled);
    CHECK(c.bonding_mode == BondingMode::KeepBondingWithQuantum);
  }

  TEST_CASE("out-of-range feature point names the field") {
    const std::string text =
        R"({"processes": [{"id": 1, "burst": 10, "pfp": {"pfp6": 5}}]})";
    CHECK_THROWS_WITH_AS(parse_workload(text), "pfp6 out of range 1..4", ValidationError);
    CHECK(validation_field([&] { parse_workload(text); }) == "processes[0].pfp.pfp6: pfp6 out of range 1..4");
  }

  TEST_CASE("content errors") {
    CHECK_THROWS_AS(parse_workload(R"({"processes": []})"), ValidationError);
    CHECK_THROWS_AS(parse_workload(R"({"processes": [{"burst": 0}]})"), ValidationError);
    CHECK_THROWS_AS(parse_workload(R"({"processes": [{"burst": 3, "arrival": -2}]})"), ValidationError);
    CHECK_THROWS_AS(parse_workload(R"({"processes": [{"id": 2, "burst": 3}, {"id": 2, "burst": 4}]})"),
                    ValidationError);
    CHECK_THROWS_AS(parse_workload(R"({"processes": [{"burst": 3, "colour": "red"}]})"), ValidationError);
    CHECK_THROWS_AS(parse_workload(R"({"processes": [{"burst": 3, "pfp": {"pfp4": 2}}]})"), ValidationError);
    CHECK_THROWS_AS(parse_workload(R"({"processes": [{"burst": 3, "pfp": {"pfp1": "kernel"}}]})"),
                    ValidationError);
    CHECK_THROWS_AS(parse_workload(R"({"processes": [{"burst": 2.5}]})"), ValidationError);
    CHECK_THROWS_AS(parse_workload(R"({"processes": [{"burst": 3}], "defaults": {"policy": "lottery"}})"),
                    ValidationError);
    CHECK_THROWS_AS(parse_workload(R"([1, 2])"), ValidationError);
    CHECK(validation_field([] { parse_workload(R"({"processes": [{"id": 4, "burst": 0}]})"); })
              .starts_with("processes[0].burst"));
  }

  TEST_CASE("syntax errors carry a position") {
    try {
      parse_workload("{\n  \"processes\": [\n    {\"burst\": 3,,}\n  ]\n}");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 3);
      CHECK(e.column() > 0);
    }
    CHECK_THROWS_AS(parse_workload(""), ParseError);
    CHECK_THROWS_AS(load_workload_file(kData / "does-not-exist.json"), ParseError);
  }

  TEST_CASE("case 1 document yields the published first-round totals") {
    const auto doc = load_workload_file(kData / "workloads" / "case1.json");
    std::vector<BatchCandidate> c;
    for (const auto& p : doc.processes) c.push_back({&p, 0});
    const Batch b = form_batch(c, 0);
    std::vector<int> totals(5);
    for (const auto& e : b.entries) totals[e.id - 1] = e.priority_value;
    CHECK(totals == std::vector<int>{12, 13, 16, 15, 18});
  }

  TEST_CASE("shipped workload files match the embedded cases") {
    for (int id = 1; id <= kPaperCaseCount; ++id) {
      const auto doc = load_workload_file(kData / "workloads" / ("case" + std::to_string(id) + ".json"));
      CHECK(doc.name == case_label(id));
      CHECK(doc.processes == paper_case(id).uni.workload);
      CHECK(doc.processes == paper_case(id).multi.workload);
    }
    const auto table = load_workload_file(kData / "workloads" / "errata" / "case3-as-printed-table.json");
    CHECK(table.processes == paper_case(3, FixtureVariant::AsPrintedTable).uni.workload);
  }

  TEST_CASE("serialize then parse is the identity") {
    std::mt19937_64 rng(31);
    for (int iter = 0; iter < 500; ++iter) {
      WorkloadDocument doc;
      doc.name = iter % 3 == 0 ? "" : "w\"" + std::to_string(iter);
      doc.processes = random_workload(rng, RandomWorkloadLimits{8, 500, 500});
      if (iter % 2 == 0) {
        doc.defaults.policy = kAllPolicies[iter % 6];
        doc.defaults.processors = 1 + iter % 3;
        doc.defaults.dedication_enabled = iter % 4 == 0;
        doc.defaults.bonding_mode = BondingMode::KeepBondingWithQuantum;
      }
      if (iter % 5 == 0) {
        doc.defaults.rr_quantum = 1 + iter % 9;
        doc.defaults.context_switch_cost = iter % 4;
      }
      const std::string text = serialize_workload(doc);
      REQUIRE(parse_workload(text) == doc);
      REQUIRE(serialize_workload(parse_workload(text)) == text);
    }
  }

  TEST_CASE("embedded cases") {
    const auto c2 = paper_case(2);
    const auto& e2 = c2.uni.expectation(Policy::Cspdabrr);
    CHECK(e2.completions == std::vector<Tick>{263, 218, 83, 38, 6});
    CHECK(e2.avg_waiting == Rational(69));
    CHECK(e2.matches_printed());
    CHECK(c2.uni.config(Policy::Cspdabrr).processors == 1);
    CHECK(c2.multi.config(Policy::RoundRobin).processors == 2);
    CHECK(c2.multi.config(Policy::RoundRobin).rr_quantum == 25);

    CHECK(paper_case(5).multi.expectation(Policy::Cspdabrr).avg_turnaround == Rational(119));

    const auto gantt3 = paper_case(3, FixtureVariant::AsPrintedGantt).uni;
    CHECK(gantt3.expectation(Policy::Cspdabrr).avg_turnaround == Rational(89));
    CHECK_FALSE(gantt3.errata.empty());
    const auto table3 = paper_case(3, FixtureVariant::AsPrintedTable).uni;
    const auto& t3 = table3.expectation(Policy::Cspdabrr);
    CHECK(t3.completions == std::vector<Tick>{12, 50, 18, 141, 187});
    CHECK(format_fixed(t3.avg_turnaround, 2) == "81.60");
    CHECK(t3.printed_turnaround == Rational(89));
    CHECK_FALSE(t3.erratum.empty());
    CHECK(table3.variant == FixtureVariant::AsPrintedTable);

    // The two variants differ only in the Case III inputs.
    for (int id : {1, 2, 4, 5, 6}) {
      CHECK(paper_case(id, FixtureVariant::AsPrintedTable).uni.workload == paper_case(id).uni.workload);
    }
    CHECK_THROWS_AS(paper_case(0), InvalidArgument);
    CHECK_THROWS_AS(paper_case(7), InvalidArgument);
    CHECK(case_label(4) == "Case-IV");
    CHECK(parse_variant("as-printed-table") == FixtureVariant::AsPrintedTable);
    CHECK_FALSE(parse_variant("as-printed").has_value());
  }

  TEST_CASE("case 5 timeline boundaries") {
    const Trace t = test::run_case(5, Environment::Uni, Policy::Cspdabrr);
    CHECK(boundary_instants(t, 0) == std::vector<Tick>{0, 105, 137, 182, 236, 290, 306, 312, 322});
  }

  TEST_CASE("case 3 timeline order") {
    const Trace t = test::run_case(3, Environment::Uni, Policy::Cspdabrr);
    std::vector<ProcessId> order;
    for (const auto& s : t.segments) order.push_back(s.process);
    CHECK(order == std::vector<ProcessId>{1, 3, 4, 2, 5, 4, 5, 5});
    CHECK(boundary_instants(t, 0) == std::vector<Tick>{0, 12, 18, 55, 87, 124, 141, 172, 187});
    const auto chart = render_gantt(t, GanttStyle{true});
    CHECK(chart.starts_with("<q=37> P1 [0..12) P3 [12..18) P4 [18..55) P2 [55..87) P5 [87..124) <q=31> P4"));
    CHECK(chart.find("<q=15> P5 [172..187)") != std::string::npos);
  }

  TEST_CASE("gantt text") {
    const std::vector<ProcessSpec> one{proc(1, 0, 5)};
    CHECK(render_gantt(simulate(one, test::config_for(Policy::Fcfs, 1))) == "P1 [0..5)\n");
    const Trace two = simulate(one, test::config_for(Policy::Fcfs, 2));
    CHECK(lines_of(render_gantt(two)) == std::vector<std::string>{"P1 [0..5)", "(idle)"});
    CHECK_THROWS_AS(parse_gantt("P1 [0..5"), ParseError);
    CHECK_THROWS_AS(parse_gantt("X1 [0..5)"), ParseError);
    CHECK_THROWS_AS(parse_gantt("P1 [a..5)"), ParseError);
  }

  TEST_CASE("gantt parses back to the trace segments") {
    std::mt19937_64 rng(77);
    for (int iter = 0; iter < 300; ++iter) {
      const auto w = random_workload(rng, RandomWorkloadLimits{6, 30, 30});
      for (Policy policy : kAllPolicies) {
        SimConfig c = test::config_for(policy, std::uniform_int_distribution<std::size_t>(1, 3)(rng));
        c.rr_quantum = 3;
        const Trace t = simulate(w, c);
        auto expected = t.segments;
        for (auto& s : expected) s.quantum.reset();
        auto parsed = parse_gantt(render_gantt(t));
        std::sort(parsed.begin(), parsed.end(), [](const auto& a, const auto& b) {
          return std::tie(a.start, a.processor) < std::tie(b.start, b.processor);
        });
        REQUIRE(parsed == expected);
        auto marked = parse_gantt(render_gantt(t, GanttStyle{true}));
        std::sort(marked.begin(), marked.end(), [](const auto& a, const auto& b) {
          return std::tie(a.start, a.processor) < std::tie(b.start, b.processor);
        });
        REQUIRE(marked.size() == expected.size());
      }
    }
  }

  TEST_CASE("uniprocessor table csv") {
    const auto rows = lines_of(export_metrics_csv(case_table(Environment::Uni)));
    REQUIRE(rows.size() == 5);
    CHECK(rows[0] ==
          "policy,waiting_Case-I,waiting_Case-II,waiting_Case-III,waiting_Case-IV,waiting_Case-V,waiting_Case-VI,"
          "waiting_total,turnaround_Case-I,turnaround_Case-II,turnaround_Case-III,turnaround_Case-IV,"
          "turnaround_Case-V,turnaround_Case-VI,turnaround_total");
    CHECK(rows[3] ==
          "CSPDABRR,134.60,69.00,51.60,102.00,141.20,97.80,596.20,204.00,121.60,89.00,163.20,205.60,157.40,940.80");
    CHECK(rows[4].starts_with("Total,"));
  }

  TEST_CASE("multiprocessor table csv totals") {
    const auto rows = lines_of(export_metrics_csv(case_table(Environment::Multi)));
    REQUIRE(rows.size() == 5);
    CHECK(rows[3].find(",189.00,") != std::string::npos);
    CHECK(rows[3].ends_with(",533.60"));
    CHECK(rows[1].ends_with(",638.20"));
  }

  TEST_CASE("empty table csv is the header") {
    CHECK(export_metrics_csv(ComparisonTable{}) == "policy,waiting_total,turnaround_total\n");
  }

  TEST_CASE("aggregate csv") {
    const auto fx = paper_case(1).uni;
    const auto m = test::metrics_of(simulate(fx.workload, fx.config(Policy::RoundRobin)), fx.workload);
    const auto rows = lines_of(export_metrics_csv(m));
    CHECK(rows[0] == "metric,value");
    CHECK(std::find(rows.begin(), rows.end(), "avg_waiting,192.00") != rows.end());
    CHECK(std::find(rows.begin(), rows.end(), "throughput,0.0144") != rows.end());
    CHECK(std::find(rows.begin(), rows.end(), "utilization_cpu0,1.00") != rows.end());
  }

  TEST_CASE("csv quoting") {
    CHECK(csv_field("plain") == "plain");
    CHECK(csv_field("a,b") == "\"a,b\"");
    CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
    CHECK(csv_field("two\nlines") == "\"two\nlines\"");
  }
}
