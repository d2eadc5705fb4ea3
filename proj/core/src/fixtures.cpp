#include "schedsim/fixtures.hpp"

#include <array>

#include "schedsim/error.hpp"

namespace schedsim {

namespace {

struct ProcessRow {
  Tick arrival;
  Tick burst;
  int priority;
  StaticPfp pfp;
};

struct RunRow {
  Policy policy;
  std::array<Tick, 5> completions;
  Rational printed_waiting;
  Rational printed_turnaround;
  const char* erratum;
};

std::vector<ProcessSpec> make_workload(const std::array<ProcessRow, 5>& rows) {
  std::vector<ProcessSpec> out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out.push_back(ProcessSpec{static_cast<ProcessId>(i + 1), rows[i].arrival, rows[i].burst,
                              rows[i].pfp, rows[i].priority});
  }
  return out;
}

ExpectedRun make_expected(const std::vector<ProcessSpec>& workload, const RunRow& row) {
  ExpectedRun e;
  e.policy = row.policy;
  e.completions.assign(row.completions.begin(), row.completions.end());
  std::int64_t turnaround = 0;
  std::int64_t waiting = 0;
  for (std::size_t i = 0; i < workload.size(); ++i) {
    const Tick t = row.completions[i] - workload[i].arrival;
    turnaround += t;
    waiting += t - workload[i].burst;
  }
  const auto n = static_cast<std::int64_t>(workload.size());
  e.avg_turnaround = Rational(turnaround, n);
  e.avg_waiting = Rational(waiting, n);
  e.printed_waiting = row.printed_waiting;
  e.printed_turnaround = row.printed_turnaround;
  e.erratum = row.erratum;
  return e;
}

PaperCaseFixture make_fixture(int id, Environment env, FixtureVariant variant, std::string title,
                              const std::array<ProcessRow, 5>& rows,
                              const std::array<RunRow, 3>& runs) {
  PaperCaseFixture f;
  f.case_id = id;
  f.environment = env;
  f.variant = variant;
  f.title = std::move(title);
  f.workload = make_workload(rows);
  for (const auto& r : runs) f.expected.push_back(make_expected(f.workload, r));
  return f;
}

Rational over5(std::int64_t sum) { return Rational(sum, 5); }

constexpr Policy RR = Policy::RoundRobin;
constexpr Policy PR = Policy::Priority;
constexpr Policy CS = Policy::Cspdabrr;

// Feature points are (pfp1, pfp2, pfp3, pfp5, pfp6) from each process's
// first-round column; completions are in process order.

PaperCase case1() {
  const std::array<ProcessRow, 5> rows = {{{0, 40, 3, {2, 2, 1, 1, 2}},
                                           {0, 55, 5, {2, 2, 2, 1, 2}},
                                           {0, 60, 2, {1, 3, 3, 2, 3}},
                                           {0, 90, 4, {1, 2, 2, 1, 4}},
                                           {0, 102, 1, {2, 3, 3, 1, 4}}}};
  const char* title = "simultaneous arrivals, bursts ascending";
  return {make_fixture(1, Environment::Uni, FixtureVariant::AsPrintedGantt, title, rows,
                       {{{RR, {140, 245, 255, 320, 347}, over5(960), over5(1307), ""},
                         {PR, {202, 347, 162, 292, 102}, over5(758), over5(1105), ""},
                         {CS, {40, 95, 224, 314, 347}, over5(673), over5(1020), ""}}}),
          make_fixture(1, Environment::Multi, FixtureVariant::AsPrintedGantt, title, rows,
                       {{{RR, {65, 120, 130, 165, 182}, over5(315), over5(662), ""},
                         {PR, {100, 157, 60, 190, 102}, over5(262), over5(609), ""},
                         {CS, {40, 55, 115, 136, 211}, over5(210), over5(557), ""}}})};
}

PaperCase case2() {
  const std::array<ProcessRow, 5> rows = {{{0, 97, 2, {2, 2, 3, 1, 3}},
                                           {0, 83, 1, {1, 3, 2, 2, 4}},
                                           {0, 45, 3, {2, 2, 1, 1, 2}},
                                           {0, 32, 5, {2, 1, 1, 2, 1}},
                                           {0, 6, 4, {1, 1, 2, 1, 1}}}};
  const char* title = "simultaneous arrivals, bursts descending";
  return {make_fixture(2, Environment::Uni, FixtureVariant::AsPrintedGantt, title, rows,
                       {{{RR, {255, 263, 176, 183, 106}, over5(720), over5(983), ""},
                         {PR, {180, 83, 225, 263, 231}, over5(719), over5(982), ""},
                         {CS, {263, 218, 83, 38, 6}, over5(345), over5(608), ""}}}),
          make_fixture(2, Environment::Multi, FixtureVariant::AsPrintedGantt, title, rows,
                       {{{RR, {135, 128, 95, 88, 56}, over5(239), over5(502), ""},
                         {PR, {97, 83, 128, 135, 103}, over5(283), over5(546), ""},
                         {CS, {129, 134, 51, 32, 6}, over5(89), over5(352), ""}}})};
}

PaperCase case3(FixtureVariant variant) {
  // The printed table gives P2 pfp6=2 and P4 pfp6=3 (totals 15/16), yet the
  // printed schedules run P4 before P2. Swapping the two pfp6 values gives
  // totals 16/15 and reproduces the printed schedules.
  const bool gantt = variant == FixtureVariant::AsPrintedGantt;
  const std::array<ProcessRow, 5> rows = {{{0, 12, 2, {1, 1, 2, 1, 1}},
                                           {0, 32, 1, {2, 2, 3, 2, gantt ? 3 : 2}},
                                           {0, 6, 4, {1, 2, 1, 1, 2}},
                                           {0, 54, 3, {1, 3, 2, 2, gantt ? 2 : 3}},
                                           {0, 83, 5, {2, 2, 3, 2, 4}}}};
  const char* title = "simultaneous arrivals, bursts unordered";
  const char* rr_note =
      "printed waiting 313/5 = 62.6 lists P4 as 104, but P4 completes at 154 with burst 54 "
      "(waiting 100); the printed completions give 309/5 = 61.8";
  const char* multi_note = "printed 249/5 as 49.5; 249/5 = 49.8";
  const char* table_uni_note =
      "printed feature points order P2 before P4 (completions 12, 50, 18, 141, 187); the "
      "printed schedule and averages correspond to the as-printed-gantt inputs";
  const char* table_multi_note =
      "printed feature points order P2 before P4 (completions 12, 38, 6, 66, 121); the "
      "printed schedule and averages correspond to the as-printed-gantt inputs";

  PaperCase pc{
      make_fixture(3, Environment::Uni, variant, title, rows,
                   {{{RR, {12, 100, 43, 154, 187}, over5(313), over5(496), rr_note},
                     {PR, {44, 32, 104, 98, 187}, over5(278), over5(465), ""},
                     gantt ? RunRow{CS, {12, 87, 18, 141, 187}, over5(258), over5(445), ""}
                           : RunRow{CS, {12, 50, 18, 141, 187}, over5(258), over5(445),
                                    table_uni_note}}}),
      make_fixture(3, Environment::Multi, variant, title, rows,
                   {{{RR, {12, 50, 18, 79, 108}, over5(80), over5(267), ""},
                     {PR, {12, 32, 38, 66, 121}, over5(82), over5(269), ""},
                     gantt ? RunRow{CS, {12, 44, 6, 61, 126}, over5(62), Rational(99, 2), multi_note}
                           : RunRow{CS, {12, 38, 6, 66, 121}, over5(62), Rational(99, 2),
                                    table_multi_note}}})};
  if (gantt) {
    const std::string note =
        "P2/P4 pfp6 swapped (2<->3) so their first-round totals are 16/15, matching the "
        "printed schedule";
    pc.uni.errata.push_back(note);
    pc.multi.errata.push_back(note);
  }
  return pc;
}

PaperCase case4() {
  const std::array<ProcessRow, 5> rows = {{{0, 27, 3, {1, 3, 3, 1, 4}},
                                           {3, 32, 5, {2, 2, 3, 1, 2}},
                                           {5, 55, 4, {2, 3, 2, 2, 3}},
                                           {7, 82, 2, {1, 2, 3, 2, 4}},
                                           {9, 110, 1, {1, 3, 1, 1, 4}}}};
  const char* title = "staggered arrivals, bursts ascending";
  return {make_fixture(4, Environment::Uni, FixtureVariant::AsPrintedGantt, title, rows,
                       {{{RR, {127, 134, 214, 271, 306}, over5(722), over5(1028), ""},
                         {PR, {27, 306, 274, 219, 137}, over5(633), over5(939), ""},
                         {CS, {27, 59, 183, 265, 306}, over5(510), over5(816), ""}}}),
          make_fixture(4, Environment::Multi, FixtureVariant::AsPrintedGantt, title, rows,
                       {{{RR, {55, 62, 105, 137, 172}, over5(201), over5(507), ""},
                         {PR, {27, 35, 172, 117, 137}, over5(158), over5(464), ""},
                         {CS, {27, 35, 90, 172, 137}, over5(131), over5(437), ""}}})};
}

PaperCase case5() {
  const std::array<ProcessRow, 5> rows = {{{0, 105, 2, {2, 2, 2, 1, 4}},
                                           {2, 80, 3, {1, 2, 1, 2, 4}},
                                           {4, 60, 4, {2, 3, 2, 1, 4}},
                                           {8, 45, 5, {1, 3, 1, 1, 3}},
                                           {16, 32, 1, {1, 2, 2, 1, 2}}}};
  const char* title = "staggered arrivals, bursts descending";
  return {make_fixture(5, Environment::Uni, FixtureVariant::AsPrintedGantt, title, rows,
                       {{{RR, {322, 317, 287, 220, 227}, over5(1021), over5(1343), ""},
                         {PR, {105, 217, 277, 322, 137}, over5(706), over5(1028), ""},
                         {CS, {105, 322, 312, 182, 137}, over5(706), over5(1028), ""}}}),
          make_fixture(5, Environment::Multi, FixtureVariant::AsPrintedGantt, title, rows,
                       {{{RR, {174, 150, 144, 120, 109}, over5(345), over5(667), ""},
                         {PR, {105, 82, 165, 159, 114}, over5(273), over5(595), ""},
                         {CS, {105, 82, 174, 150, 114}, over5(273), over5(595), ""}}})};
}

PaperCase case6() {
  const std::array<ProcessRow, 5> rows = {{{0, 45, 5, {1, 2, 3, 2, 4}},
                                           {5, 90, 1, {2, 3, 3, 2, 3}},
                                           {8, 70, 3, {2, 2, 1, 1, 4}},
                                           {15, 38, 4, {1, 3, 1, 1, 3}},
                                           {20, 55, 2, {1, 2, 3, 2, 2}}}};
  const char* title = "staggered arrivals, bursts unordered";
  return {make_fixture(6, Environment::Uni, FixtureVariant::AsPrintedGantt, title, rows,
                       {{{RR, {145, 298, 278, 208, 283}, over5(866), over5(1164), ""},
                         {PR, {45, 135, 260, 298, 190}, over5(582), over5(880), ""},
                         {CS, {45, 298, 271, 83, 138}, over5(489), over5(787), ""}}}),
          make_fixture(6, Environment::Multi, FixtureVariant::AsPrintedGantt, title, rows,
                       {{{RR, {75, 158, 145, 113, 143}, over5(288), over5(586), ""},
                         {PR, {45, 95, 165, 138, 100}, over5(197), over5(495), ""},
                         {CS, {45, 95, 165, 83, 138}, over5(180), over5(478), ""}}})};
}

}  // namespace

const ExpectedRun& PaperCaseFixture::expectation(Policy policy) const {
  for (const auto& e : expected) {
    if (e.policy == policy) return e;
  }
  throw InvalidArgument("case " + std::to_string(case_id) + " has no expectation for " +
                        std::string(policy_key(policy)));
}

SimConfig PaperCaseFixture::config(Policy policy) const {
  SimConfig c;
  c.policy = policy;
  c.processors = processors_for(environment);
  return c;
}

PaperCase paper_case(int id, FixtureVariant variant) {
  PaperCase pc;
  switch (id) {
    case 1: pc = case1(); break;
    case 2: pc = case2(); break;
    case 3: pc = case3(variant); break;
    case 4: pc = case4(); break;
    case 5: pc = case5(); break;
    case 6: pc = case6(); break;
    default: throw InvalidArgument("case id must be 1..6, got " + std::to_string(id));
  }
  pc.uni.variant = variant;
  pc.multi.variant = variant;
  return pc;
}

std::string case_label(int id) {
  static const char* numerals[] = {"I", "II", "III", "IV", "V", "VI"};
  if (id < 1 || id > kPaperCaseCount) throw InvalidArgument("case id must be 1..6");
  return std::string("Case-") + numerals[id - 1];
}

std::string_view variant_key(FixtureVariant variant) {
  return variant == FixtureVariant::AsPrintedGantt ? "as-printed-gantt" : "as-printed-table";
}

std::optional<FixtureVariant> parse_variant(std::string_view key) {
  if (key == "as-printed-gantt") return FixtureVariant::AsPrintedGantt;
  if (key == "as-printed-table") return FixtureVariant::AsPrintedTable;
  return std::nullopt;
}

}  // namespace schedsim
