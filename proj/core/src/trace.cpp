#include "schedsim/trace.hpp"

namespace schedsim {

const ProcessOutcome* Trace::find(ProcessId id) const {
  for (const auto& p : processes) {
    if (p.id == id) return &p;
  }
  return nullptr;
}

std::vector<TimelineSegment> Trace::segments_of(ProcessId id) const {
  std::vector<TimelineSegment> out;
  for (const auto& s : segments) {
    if (s.process == id) out.push_back(s);
  }
  return out;
}

std::vector<TimelineSegment> Trace::segments_on(std::size_t processor) const {
  std::vector<TimelineSegment> out;
  for (const auto& s : segments) {
    if (s.processor == processor) out.push_back(s);
  }
  return out;
}

Tick Trace::busy_ticks(std::size_t processor) const {
  Tick sum = 0;
  for (const auto& s : segments) {
    if (s.processor == processor) sum += s.length();
  }
  return sum;
}

Tick Trace::busy_ticks() const {
  Tick sum = 0;
  for (const auto& s : segments) sum += s.length();
  return sum;
}

}  // namespace schedsim
