#include "schedsim/gantt.hpp"

#include <charconv>
#include <sstream>

#include "schedsim/error.hpp"

namespace schedsim {

std::string render_gantt(const Trace& trace, GanttStyle style) {
  std::string out;
  for (std::size_t p = 0; p < trace.processors; ++p) {
    const auto segments = trace.segments_on(p);
    if (segments.empty()) {
      out += "(idle)\n";
      continue;
    }
    std::optional<Tick> last_quantum;
    std::string line;
    for (const auto& s : segments) {
      if (style.quantum_markers && s.quantum && s.quantum != last_quantum) {
        line += (line.empty() ? "" : " ") + std::string("<q=") + std::to_string(*s.quantum) + ">";
        last_quantum = s.quantum;
      }
      if (!line.empty()) line += ' ';
      line += "P" + std::to_string(s.process) + " [" + std::to_string(s.start) + ".." +
              std::to_string(s.end) + ")";
    }
    out += line + "\n";
  }
  return out;
}

namespace {

Tick to_tick(std::string_view s, std::size_t line) {
  Tick v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ParseError("bad number \"" + std::string(s) + "\" in timeline", line, 0);
  }
  return v;
}

}  // namespace

std::vector<TimelineSegment> parse_gantt(std::string_view text) {
  std::vector<TimelineSegment> out;
  std::istringstream lines{std::string(text)};
  std::string line;
  std::size_t processor = 0;
  while (std::getline(lines, line)) {
    const std::size_t line_no = processor + 1;
    std::istringstream tokens(line);
    std::string label;
    std::optional<Tick> quantum;
    while (tokens >> label) {
      if (label == "(idle)") continue;
      if (label.rfind("<q=", 0) == 0 && label.back() == '>') {
        quantum = to_tick(std::string_view(label).substr(3, label.size() - 4), line_no);
        continue;
      }
      std::string range;
      if (label.size() < 2 || label[0] != 'P' || !(tokens >> range) || range.size() < 6 ||
          range.front() != '[' || range.back() != ')') {
        throw ParseError("malformed timeline token near \"" + label + "\"", line_no, 0);
      }
      const auto dots = range.find("..");
      if (dots == std::string::npos) throw ParseError("missing \"..\" in " + range, line_no, 0);
      TimelineSegment s;
      s.processor = processor;
      s.process = static_cast<ProcessId>(to_tick(std::string_view(label).substr(1), line_no));
      s.start = to_tick(std::string_view(range).substr(1, dots - 1), line_no);
      s.end = to_tick(std::string_view(range).substr(dots + 2, range.size() - dots - 3), line_no);
      s.quantum = quantum;
      out.push_back(s);
    }
    ++processor;
  }
  return out;
}

std::vector<Tick> boundary_instants(const Trace& trace, std::size_t processor) {
  std::vector<Tick> out{0};
  for (const auto& s : trace.segments_on(processor)) {
    if (s.start != out.back()) out.push_back(s.start);
    out.push_back(s.end);
  }
  return out;
}

}  // namespace schedsim
