#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "cframe/environment.hpp"
#include "cframe/forest.hpp"

namespace cframe {

class FrameError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class VertexKind { kStartCopy, kEndCopy, kTreePoint, kBoundaryAnchor };

/// Side A is the first traversal of a tree edge by the boundary walk (its left
/// side, going from the anchor towards the deep end); side B the second.
enum class Side { kA, kB };

inline Side opposite(Side s) { return s == Side::kA ? Side::kB : Side::kA; }

struct FrameVertex {
  VertexKind kind = VertexKind::kStartCopy;
  int entity = -1;   // copies: entity index
  int copy = -1;     // copies: ordinal 0..deg-1 (0 for boundary entities)
  int edge_id = 0;   // tree points: forest edge id
  int anchor = -1;   // anchors: anchor ordinal (node = entity_count + anchor)
  Side side = Side::kA;
  /// Copies only: the copy's angular sector at the entity sweeps clockwise
  /// from the direction of sector_in to the direction of sector_out (forest
  /// edge indices). Both are -1 for entities without tree edges.
  int sector_in = -1;
  int sector_out = -1;
  PlanePoint position_hint;

  bool is_copy() const { return kind == VertexKind::kStartCopy || kind == VertexKind::kEndCopy; }
  bool is_tree_point() const { return kind == VertexKind::kTreePoint; }
};

struct CornerMarker {
  int before_ring_index = 0;  // rendered just before this ring vertex
  PlanePoint position;
};

/// The Circular Frame: the boundary of the layer cut open along the forest,
/// as a cyclic sequence of vertices in traversal order.
struct Frame {
  std::vector<FrameVertex> ring;
  /// tunnels[edge_id - 1] = {ring index of side A, ring index of side B}
  std::vector<std::pair<int, int>> tunnels;
  /// tunnel_segments[edge_id - 1] = plane segment of the cut edge, shallow end first.
  std::vector<std::pair<PlanePoint, PlanePoint>> tunnel_segments;
  /// entity_copies[entity] = ring indices of the entity's copies, by ordinal.
  std::vector<std::vector<int>> entity_copies;
  std::vector<CornerMarker> corners;

  int size() const { return static_cast<int>(ring.size()); }
  int tunnel_vertex(int edge_id, Side side) const {
    const auto& t = tunnels.at(edge_id - 1);
    return side == Side::kA ? t.first : t.second;
  }
  /// Ring index of the other side of a tree point.
  int partner(int ring_index) const;
};

/// Cut the layer along every forest edge and return the boundary walk.
Frame cut(const Environment& env, const Forest& forest);

/// Combinatorial forest recovered from an unrouted frame by glueing each
/// (side A, side B) pair back together.
struct GluedForest {
  /// edges[edge_id - 1] = {shallow node, deep node}
  std::vector<std::pair<NodeId, NodeId>> edges;
  /// Clockwise cyclic order of incident edge ids around each entity, starting
  /// from the edge towards its anchor. Empty for entities without edges.
  std::vector<std::vector<int>> rotation;
};

GluedForest glue(const Frame& frame, int entity_count);

/// Same rotation data computed directly from a forest, for comparison.
GluedForest forest_rotation(const Forest& forest);

std::string vertex_label(const Environment& env, const FrameVertex& v);

}  // namespace cframe
