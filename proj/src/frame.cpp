#include "cframe/frame.hpp"

#include <algorithm>
#include <tuple>

namespace cframe {

namespace {

// Next incident edge clockwise from `edge` around node (adjacency is CCW sorted).
int clockwise_next(const Forest& forest, NodeId node, int edge) {
  const auto& adj = forest.adjacency[node];
  const auto it = std::find(adj.begin(), adj.end(), edge);
  if (it == adj.end()) throw FrameError("edge not incident to node during walk");
  const std::size_t k = static_cast<std::size_t>(it - adj.begin());
  return adj[(k + adj.size() - 1) % adj.size()];
}

PlanePoint midpoint(const Forest& forest, int edge_index) {
  const auto& e = forest.edges[edge_index];
  return (forest.position(e.a) + forest.position(e.b)) * 0.5;
}

class BoundaryWalk {
 public:
  BoundaryWalk(const Environment& env, const Forest& forest, Frame& frame)
      : env_(env), forest_(forest), frame_(frame) {}

  void emit_copy(int entity, int in, int out) {
    FrameVertex v;
    v.kind = env_.entity(entity).kind == EntityKind::kStart ? VertexKind::kStartCopy
                                                            : VertexKind::kEndCopy;
    v.entity = entity;
    v.copy = static_cast<int>(frame_.entity_copies[entity].size());
    v.sector_in = in;
    v.sector_out = out;
    v.position_hint = env_.entity(entity).center;
    frame_.entity_copies[entity].push_back(frame_.size());
    frame_.ring.push_back(v);
  }

  void emit_tree_point(int edge_index, Side side) {
    FrameVertex v;
    v.kind = VertexKind::kTreePoint;
    v.edge_id = edge_index + 1;
    v.side = side;
    v.position_hint = midpoint(forest_, edge_index);
    auto& t = frame_.tunnels[edge_index];
    (side == Side::kA ? t.first : t.second) = frame_.size();
    frame_.ring.push_back(v);
  }

  void emit_anchor(int anchor, Side side) {
    FrameVertex v;
    v.kind = VertexKind::kBoundaryAnchor;
    v.anchor = anchor;
    v.side = side;
    v.position_hint = forest_.position(forest_.anchor_node(anchor));
    frame_.ring.push_back(v);
  }

  // Walk around the subtree hanging below `node`, entered through `in`.
  void visit(NodeId node, int in) {
    int current = in;
    while (true) {
      const int out = clockwise_next(forest_, node, current);
      emit_copy(node, current, out);
      if (out == in) break;
      descend(out);
      current = out;
    }
  }

  void descend(int edge_index) {
    const NodeId child = forest_.edges[edge_index].b;
    if (forest_.is_anchor(child)) throw FrameError("forest edge points into an anchor");
    emit_tree_point(edge_index, Side::kA);
    visit(child, edge_index);
    emit_tree_point(edge_index, Side::kB);
  }

 private:
  const Environment& env_;
  const Forest& forest_;
  Frame& frame_;
};

}  // namespace

int Frame::partner(int ring_index) const {
  const FrameVertex& v = ring.at(ring_index);
  if (!v.is_tree_point()) throw FrameError("partner requested for a non tree point");
  return tunnel_vertex(v.edge_id, opposite(v.side));
}

Frame cut(const Environment& env, const Forest& forest) {
  if (forest.entity_count != env.entity_count()) {
    throw FrameError("forest was built for a different environment");
  }
  const RectBoundary& bd = env.boundary;
  for (NodeId n = 0; n < forest.entity_count; ++n) {
    if (tree_degree(forest, n) == 0 && !bd.on_boundary(env.entity(n).center)) {
      throw FrameError("interior entity " + env.entity(n).id + " is not attached to any tree");
    }
  }
  for (const auto& e : forest.edges) {
    if (e.a < 0 || e.b < 0 || e.a >= forest.node_count() || e.b >= forest.node_count()) {
      throw FrameError("dangling forest edge " + std::to_string(e.id));
    }
  }

  // Items met along the counter-clockwise boundary walk from (x_min, y_min).
  // kind 0 = corner marker, 1 = boundary entity, 2 = anchor.
  std::vector<std::tuple<double, int, int>> items;
  const double w = bd.x_max - bd.x_min;
  const double h = bd.y_max - bd.y_min;
  items.emplace_back(0.0, 0, 0);
  items.emplace_back(w, 0, 1);
  items.emplace_back(w + h, 0, 2);
  items.emplace_back(2 * w + h, 0, 3);
  for (NodeId n = 0; n < forest.entity_count; ++n) {
    if (tree_degree(forest, n) == 0) items.emplace_back(bd.ccw_parameter(env.entity(n).center), 1, n);
  }
  for (int a = 0; a < forest.anchor_count(); ++a) {
    const NodeId node = forest.anchor_node(a);
    if (tree_degree(forest, node) != 1) throw FrameError("anchor without exactly one edge");
    items.emplace_back(bd.ccw_parameter(forest.position(node)), 2, a);
  }
  std::sort(items.begin(), items.end());

  const PlanePoint corner_points[4] = {
      {bd.x_min, bd.y_min}, {bd.x_max, bd.y_min}, {bd.x_max, bd.y_max}, {bd.x_min, bd.y_max}};

  Frame frame;
  frame.tunnels.assign(forest.edges.size(), {-1, -1});
  for (const auto& e : forest.edges) {
    frame.tunnel_segments.emplace_back(forest.position(e.a), forest.position(e.b));
  }
  frame.entity_copies.assign(forest.entity_count, {});
  BoundaryWalk walk(env, forest, frame);
  for (const auto& [param, kind, id] : items) {
    if (kind == 0) {
      frame.corners.push_back({frame.size(), corner_points[id]});
    } else if (kind == 1) {
      walk.emit_copy(id, -1, -1);
    } else {
      const NodeId node = forest.anchor_node(id);
      walk.emit_anchor(id, Side::kA);
      walk.descend(forest.adjacency[node].front());
      walk.emit_anchor(id, Side::kB);
    }
  }
  for (auto& c : frame.corners) {
    if (c.before_ring_index >= frame.size()) c.before_ring_index = 0;
  }
  for (const auto& t : frame.tunnels) {
    if (t.first < 0 || t.second < 0) throw FrameError("forest edge unreachable from any anchor");
  }
  return frame;
}

GluedForest glue(const Frame& frame, int entity_count) {
  GluedForest out;
  out.edges.resize(frame.tunnels.size());
  const int size = frame.size();
  auto node_of = [&](int ring_index) -> NodeId {
    const FrameVertex& v = frame.ring[ring_index];
    if (v.kind == VertexKind::kBoundaryAnchor) return entity_count + v.anchor;
    if (v.is_copy()) return v.entity;
    throw FrameError("tree point adjacent to a tree point");
  };
  for (std::size_t k = 0; k < frame.tunnels.size(); ++k) {
    const int ia = frame.tunnels[k].first;
    out.edges[k] = {node_of((ia + size - 1) % size), node_of((ia + 1) % size)};
  }

  out.rotation.assign(entity_count, {});
  for (int entity = 0; entity < entity_count; ++entity) {
    const auto& copies = frame.entity_copies[entity];
    if (copies.empty()) continue;
    const FrameVertex& first_prev = frame.ring[(copies.front() + size - 1) % size];
    if (!first_prev.is_tree_point()) continue;  // boundary entity
    // The arrival from the parent is the copy preceded by a side-A tree point.
    std::vector<int> order(copies.begin(), copies.end());
    std::sort(order.begin(), order.end());
    std::size_t start = 0;
    for (std::size_t i = 0; i < order.size(); ++i) {
      const FrameVertex& prev = frame.ring[(order[i] + size - 1) % size];
      if (prev.is_tree_point() && prev.side == Side::kA &&
          out.edges[prev.edge_id - 1].second == entity) {
        start = i;
        out.rotation[entity].push_back(prev.edge_id);
        break;
      }
    }
    for (std::size_t i = 0; i + 1 < order.size(); ++i) {
      const int idx = order[(start + i) % order.size()];
      const FrameVertex& next = frame.ring[(idx + 1) % size];
      out.rotation[entity].push_back(next.edge_id);
    }
  }
  return out;
}

GluedForest forest_rotation(const Forest& forest) {
  GluedForest out;
  for (const auto& e : forest.edges) out.edges.emplace_back(e.a, e.b);
  out.rotation.assign(forest.entity_count, {});
  for (NodeId n = 0; n < forest.entity_count; ++n) {
    const auto& adj = forest.adjacency[n];
    if (adj.empty()) continue;
    int parent = -1;
    for (int k : adj) {
      if (forest.edges[k].b == n) parent = k;
    }
    if (parent < 0) continue;
    int cur = parent;
    for (std::size_t i = 0; i < adj.size(); ++i) {
      out.rotation[n].push_back(cur + 1);
      cur = clockwise_next(forest, n, cur);
    }
  }
  return out;
}

std::string vertex_label(const Environment& env, const FrameVertex& v) {
  switch (v.kind) {
    case VertexKind::kStartCopy:
    case VertexKind::kEndCopy:
      return env.entity(v.entity).id + std::string(static_cast<std::size_t>(v.copy), '\'');
    case VertexKind::kTreePoint:
      return "r" + std::to_string(v.edge_id) + (v.side == Side::kB ? "'" : "");
    case VertexKind::kBoundaryAnchor:
      return "b" + std::to_string(v.anchor + 1) + (v.side == Side::kB ? "'" : "");
  }
  return "?";
}

}  // namespace cframe
