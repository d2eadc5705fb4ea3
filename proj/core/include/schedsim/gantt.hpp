#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "schedsim/trace.hpp"

namespace schedsim {

struct GanttStyle {
  bool quantum_markers = false;  // emit "<q=N>" whenever the slice bound changes on a line
};

/// Plain-text timeline, one line per processor in index order:
///
///   P1 [0..12) P3 [12..18) P4 [18..55) ...
///
/// A processor that never ran anything renders as "(idle)".
std::string render_gantt(const Trace& trace, GanttStyle style = {});

/// Reads render_gantt output back into segments (processor = line index).
/// Throws ParseError on anything else.
std::vector<TimelineSegment> parse_gantt(std::string_view text);

/// 0 followed by every segment end on one processor, e.g. 0 105 137 ...
std::vector<Tick> boundary_instants(const Trace& trace, std::size_t processor);

}  // namespace schedsim
