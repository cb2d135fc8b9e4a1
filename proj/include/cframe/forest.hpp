#pragma once

#include <stdexcept>
#include <vector>

#include "cframe/environment.hpp"
#include "cframe/geometry.hpp"

namespace cframe {

class ForestError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Forest nodes are dense integers: [0, entity_count) are environment
/// entities (same indexing as Environment), the rest are boundary anchors.
using NodeId = int;

struct ForestEdge {
  int id = 0;        // 1-based, in acceptance order
  NodeId a = -1;     // shallow end (towards the boundary anchor)
  NodeId b = -1;     // deep end
};

struct Forest {
  int entity_count = 0;
  std::vector<PlanePoint> node_positions;  // entities then anchors
  std::vector<ForestEdge> edges;           // edges[k].id == k + 1
  /// node -> incident edge indices, sorted counter-clockwise by direction angle.
  std::vector<std::vector<int>> adjacency;

  int node_count() const { return static_cast<int>(node_positions.size()); }
  int anchor_count() const { return node_count() - entity_count; }
  bool is_anchor(NodeId n) const { return n >= entity_count; }
  NodeId anchor_node(int anchor) const { return entity_count + anchor; }
  const PlanePoint& position(NodeId n) const { return node_positions.at(n); }
  const ForestEdge& edge(int id) const { return edges.at(id - 1); }
  NodeId other_end(int edge_index, NodeId n) const {
    const auto& e = edges[edge_index];
    return e.a == n ? e.b : e.a;
  }
  /// Direction angle of an incident edge seen from n.
  double edge_angle(int edge_index, NodeId n) const;
};

struct ForestParams {
  double entity_clearance = 1.0;  // edges keep this distance from non-endpoint entity centres
};

/// Boundary-anchored non-crossing spanning forest: Kruskal over entity pairs
/// and perpendicular boundary projections, with all anchors unified into one
/// virtual node so each tree receives exactly one anchor edge.
Forest build_forest(const Environment& env, const ForestParams& params = {});

/// Number of forest edges incident to node. Throws ForestError for unknown nodes.
int tree_degree(const Forest& forest, NodeId node);

/// Checks acyclicity, one anchor edge per tree, planarity and entity clearance.
/// Returns an empty string when valid, otherwise a description of the first violation.
std::string check_forest(const Environment& env, const Forest& forest, const ForestParams& params = {});

}  // namespace cframe
