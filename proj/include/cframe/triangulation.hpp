#pragma once

#include <array>
#include <vector>

#include "cframe/environment.hpp"
#include "cframe/forest.hpp"

namespace cframe {

/// Constrained triangulation of the boundary rectangle. Vertices are the
/// forest nodes (same ids) followed by the four corners; forest edges and
/// boundary pieces are always edges.
struct Triangulation {
  int entity_count = 0;
  std::vector<PlanePoint> points;
  std::vector<std::array<int, 3>> triangles;  // counter-clockwise
  /// neighbours[t][i]: triangle across the edge opposite corner i, or -1.
  std::vector<std::array<int, 3>> neighbours;
  /// forest_edge[t][i]: forest edge index on the edge opposite corner i, or -1.
  std::vector<std::array<int, 3>> forest_edge;
  /// side_triangles[k] = {triangle left of a->b, triangle right of a->b}.
  std::vector<std::array<int, 2>> side_triangles;

  int size() const { return static_cast<int>(triangles.size()); }
  bool has_vertex(int t, int v) const;
  /// Position of v among the corners of t, or -1.
  int corner_of(int t, int v) const;
  /// Index i such that the edge opposite corner i is shared with triangle u, or -1.
  int shared_edge(int t, int u) const;
};

Triangulation triangulate(const Environment& env, const Forest& forest);

}  // namespace cframe
