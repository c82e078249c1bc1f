#pragma once

#include "divlink/diagram.h"
#include "divlink/divide.h"

#include <string>

namespace divlink {

struct RenderConfig {
  int canvas_size = 600;        // px, the larger side of the drawing
  double stroke_width = 2.0;    // px
  double under_gap = 10.0;      // px removed from an under-strand at each crossing
  bool show_labels = false;     // crossing ids, double point indices
  bool show_mirror_line = true;
};

/// Throws InvalidParams unless the canvas is positive and the gap is wider than the stroke.
void check_render_config(const RenderConfig& config);

/// Boundary circle, one path per branch, hollow circles (class "endpoint") at
/// open-branch ends, and markers: class "double-point" (filled circle) and
/// class "tangency" (short vertical bar).
std::string render_divide_svg(const Divide& divide, const RenderConfig& config = {});

/// One path per strand (class "strand", data-component). Under-strands are cut
/// at every crossing, so each crossing leaves exactly one gap; a component
/// without under-passages is a single closed path.
std::string render_diagram_svg(const LinkDiagram& diagram, const RenderConfig& config = {});

}  // namespace divlink
