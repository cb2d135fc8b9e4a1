#include "cframe/forest.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <sstream>
#include <tuple>

namespace cframe {

namespace {

class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[std::max(a, b)] = std::min(a, b);
    return true;
  }

 private:
  std::vector<int> parent_;
};

struct Candidate {
  double weight = 0.0;
  int a = -1;           // entity index
  int b = -1;           // entity index, or -1 for a boundary projection
  PlanePoint anchor{};  // boundary point when b == -1

  auto key() const {
    const int second = b >= 0 ? b : 1 << 30;
    return std::make_tuple(weight, std::min(a, b >= 0 ? b : a), second, anchor.x, anchor.y);
  }
};

struct Segment {
  PlanePoint p;
  PlanePoint q;
};

bool clear_of_entities(const Environment& env, const PlanePoint& p, const PlanePoint& q,
                       int skip_a, int skip_b, double clearance) {
  for (int i = 0; i < env.entity_count(); ++i) {
    if (i == skip_a || i == skip_b) continue;
    if (point_segment_distance(env.entity(i).center, p, q) < clearance) return false;
  }
  return true;
}

}  // namespace

double Forest::edge_angle(int edge_index, NodeId n) const {
  return normalize_angle(angle_of(position(other_end(edge_index, n)) - position(n)));
}

Forest build_forest(const Environment& env, const ForestParams& params) {
  const int entity_count = env.entity_count();
  const RectBoundary& bd = env.boundary;

  std::vector<int> interior;
  for (int i = 0; i < entity_count; ++i) {
    if (!bd.on_boundary(env.entity(i).center)) interior.push_back(i);
  }

  std::vector<Candidate> candidates;
  for (std::size_t u = 0; u < interior.size(); ++u) {
    const int i = interior[u];
    const PlanePoint c = env.entity(i).center;
    for (std::size_t v = u + 1; v < interior.size(); ++v) {
      const int j = interior[v];
      candidates.push_back({distance(c, env.entity(j).center), i, j, {}});
    }
    const PlanePoint projections[4] = {
        {c.x, bd.y_min}, {bd.x_max, c.y}, {c.x, bd.y_max}, {bd.x_min, c.y}};
    for (const PlanePoint& p : projections) candidates.push_back({distance(c, p), i, -1, p});
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const Candidate& l, const Candidate& r) { return l.key() < r.key(); });

  const int virtual_boundary = entity_count;
  UnionFind uf(entity_count + 1);
  std::vector<Segment> accepted_segments;
  std::vector<Candidate> accepted;
  int remaining = static_cast<int>(interior.size());

  for (const Candidate& cand : candidates) {
    if (remaining == 0) break;
    const PlanePoint p = env.entity(cand.a).center;
    const PlanePoint q = cand.b >= 0 ? env.entity(cand.b).center : cand.anchor;
    const int other = cand.b >= 0 ? cand.b : virtual_boundary;
    if (uf.find(cand.a) == uf.find(other)) continue;
    if (!clear_of_entities(env, p, q, cand.a, cand.b, params.entity_clearance)) continue;
    bool crossing = false;
    for (const Segment& s : accepted_segments) {
      if (segments_properly_interact(p, q, s.p, s.q)) {
        crossing = true;
        break;
      }
    }
    if (crossing) continue;
    const bool a_joined = uf.find(cand.a) == uf.find(virtual_boundary);
    const bool b_joined = uf.find(other) == uf.find(virtual_boundary);
    uf.unite(cand.a, other);
    if (a_joined != b_joined) {
      // Count interior entities newly attached to the boundary component.
      remaining = 0;
      for (int i : interior) {
        if (uf.find(i) != uf.find(virtual_boundary)) ++remaining;
      }
    }
    accepted_segments.push_back({p, q});
    accepted.push_back(cand);
  }
  if (remaining != 0) {
    throw ForestError("no non-crossing boundary-anchored forest under the candidate policy");
  }

  Forest forest;
  forest.entity_count = entity_count;
  for (int i = 0; i < entity_count; ++i) forest.node_positions.push_back(env.entity(i).center);

  std::vector<std::pair<NodeId, NodeId>> raw;
  for (const Candidate& c : accepted) {
    if (c.b >= 0) {
      raw.emplace_back(c.a, c.b);
    } else {
      forest.node_positions.push_back(c.anchor);
      raw.emplace_back(forest.node_count() - 1, c.a);
    }
  }

  // Orient every edge from the anchor side towards the deep side.
  const int node_count = forest.node_count();
  std::vector<std::vector<int>> incident(node_count);
  for (int k = 0; k < static_cast<int>(raw.size()); ++k) {
    incident[raw[k].first].push_back(k);
    incident[raw[k].second].push_back(k);
  }
  forest.edges.resize(raw.size());
  std::vector<bool> seen(node_count, false);
  std::queue<NodeId> queue;
  for (NodeId n = entity_count; n < node_count; ++n) {
    seen[n] = true;
    queue.push(n);
  }
  while (!queue.empty()) {
    const NodeId n = queue.front();
    queue.pop();
    for (int k : incident[n]) {
      const NodeId m = raw[k].first == n ? raw[k].second : raw[k].first;
      if (seen[m]) continue;
      seen[m] = true;
      forest.edges[k] = {k + 1, n, m};
      queue.push(m);
    }
  }

  forest.adjacency.assign(node_count, {});
  for (int k = 0; k < static_cast<int>(forest.edges.size()); ++k) {
    forest.adjacency[forest.edges[k].a].push_back(k);
    forest.adjacency[forest.edges[k].b].push_back(k);
  }
  for (NodeId n = 0; n < node_count; ++n) {
    auto& adj = forest.adjacency[n];
    std::sort(adj.begin(), adj.end(), [&](int l, int r) {
      return forest.edge_angle(l, n) < forest.edge_angle(r, n);
    });
  }
  return forest;
}

int tree_degree(const Forest& forest, NodeId node) {
  if (node < 0 || node >= forest.node_count()) {
    throw ForestError("unknown forest node " + std::to_string(node));
  }
  return static_cast<int>(forest.adjacency[node].size());
}

std::string check_forest(const Environment& env, const Forest& forest, const ForestParams& params) {
  std::ostringstream err;
  const int nodes = forest.node_count();
  UnionFind uf(nodes);
  for (const auto& e : forest.edges) {
    if (e.a == e.b) return "self loop on edge " + std::to_string(e.id);
    if (!uf.unite(e.a, e.b)) return "cycle closed by edge " + std::to_string(e.id);
  }
  for (std::size_t i = 0; i < forest.edges.size(); ++i) {
    const auto& e = forest.edges[i];
    const PlanePoint p = forest.position(e.a);
    const PlanePoint q = forest.position(e.b);
    if (!env.boundary.contains(p) || !env.boundary.contains(q)) {
      return "edge " + std::to_string(e.id) + " leaves the boundary";
    }
    const int skip_a = forest.is_anchor(e.a) ? -1 : e.a;
    const int skip_b = forest.is_anchor(e.b) ? -1 : e.b;
    if (!clear_of_entities(env, p, q, skip_a, skip_b, params.entity_clearance)) {
      return "edge " + std::to_string(e.id) + " passes too close to an entity";
    }
    for (std::size_t j = i + 1; j < forest.edges.size(); ++j) {
      const auto& f = forest.edges[j];
      if (segments_properly_interact(p, q, forest.position(f.a), forest.position(f.b))) {
        return "edges " + std::to_string(e.id) + " and " + std::to_string(f.id) + " interact";
      }
    }
  }
  // Every tree touches the boundary through exactly one anchor edge, and every
  // interior entity is in some tree.
  std::vector<int> anchors_per_root(nodes, 0);
  for (NodeId n = forest.entity_count; n < nodes; ++n) {
    if (!env.boundary.on_boundary(forest.position(n))) return "anchor off the boundary";
    if (tree_degree(forest, n) != 1) return "anchor with degree != 1";
    ++anchors_per_root[uf.find(n)];
  }
  for (NodeId n = 0; n < forest.entity_count; ++n) {
    const bool on_b = env.boundary.on_boundary(env.entity(n).center);
    if (on_b && tree_degree(forest, n) != 0) return "boundary entity carries tree edges";
    if (!on_b && anchors_per_root[uf.find(n)] != 1) {
      err << "entity " << env.entity(n).id << " is not attached to exactly one anchor";
      return err.str();
    }
  }
  return {};
}

}  // namespace cframe
