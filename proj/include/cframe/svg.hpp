#pragma once

#include <string>
#include <vector>

#include "cframe/astar.hpp"
#include "cframe/embedding.hpp"
#include "cframe/environment.hpp"
#include "cframe/forest.hpp"
#include "cframe/routed_frame.hpp"

namespace cframe {

struct SvgStyle {
  double scale = 6.0;  // pixels per plane unit
  double margin = 20.0;
};

/// Boundary, entity disks, forest edges (dashed, when given) and sketch paths.
std::string render_svg(const Environment& env, const Forest* forest,
                       const std::vector<SketchPath>& paths, const SvgStyle& style = {});

/// Same scene with grid router paths drawn as polylines.
std::string render_svg(const Environment& env, const Forest* forest, const GridRouteResult& grid,
                       const SvgStyle& style = {});

/// Circular Frame: ring vertices on a circle with labels and the chords.
std::string render_frame_svg(const RoutedFrame& rf, const Environment& env,
                             const SvgStyle& style = {});

void write_text_file(const std::string& path, const std::string& text);

}  // namespace cframe
