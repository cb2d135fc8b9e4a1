#pragma once

#include <vector>

#include "cframe/environment.hpp"
#include "cframe/forest.hpp"
#include "cframe/routed_frame.hpp"
#include "cframe/triangulation.hpp"

namespace cframe {

/// Corridor of triangles followed by one routed net, free of backtracks,
/// starting at the last triangle around the start entity and ending at the
/// first triangle around the end entity.
struct Sleeve {
  int net = 0;
  int start_vertex = -1;
  int end_vertex = -1;
  std::vector<int> triangles;

  int size() const { return static_cast<int>(triangles.size()); }
};

/// Triangles around `node` inside the clockwise wedge from edge `in` to edge
/// `out`; the whole fan when the copy has no sector.
std::vector<int> sector_triangles(const Triangulation& tr, const Forest& forest, int node,
                                  int in, int out);

Sleeve build_sleeve(const Triangulation& tr, const Forest& forest, const RoutedFrame& rf,
                    const Environment& env, const Net& net);

/// Bend of the shortest path through a sleeve. portal k separates
/// triangles k-1 and k; orientation is +1 when the path turns left.
struct Bend {
  int vertex = -1;
  int orientation = 0;
  int portal = 0;
};

std::vector<Bend> funnel(const Triangulation& tr, const Sleeve& sleeve);

/// Lateral order of two non-crossing sleeves that both pass through the
/// triangle a.triangles[i] == b.triangles[j]: -1 if a runs left of b, +1 if
/// right, 0 if the shared stretch through (i, j) does not separate them.
int lateral_order(const Triangulation& tr, const Sleeve& a, int i, const Sleeve& b, int j);

/// Side of vertex v (a corner of s.triangles[i]) relative to the passage of
/// s through that triangle: +1 left, -1 right, 0 if the passage ends at v.
int vertex_side(const Triangulation& tr, const Sleeve& s, int i, int v);

/// Number of consecutive triangles shared by a and b in lockstep through (i, j).
int shared_stretch(const Sleeve& a, int i, const Sleeve& b, int j);

}  // namespace cframe
