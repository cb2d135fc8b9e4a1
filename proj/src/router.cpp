#include "cframe/router.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <tuple>

#include "face_graph.hpp"

namespace cframe {

namespace {

using detail::FaceGraph;
using detail::Link;
using detail::ring_distance;

std::vector<int> free_copies(const RoutedFrame& rf, int entity) {
  std::vector<int> out;
  for (int v : rf.frame().entity_copies.at(entity)) {
    if (rf.end_count(v) == 0) out.push_back(v);
  }
  return out;
}

struct BfsResult {
  std::vector<int> dist;
  std::vector<const Link*> via;  // link used to enter each face
  std::vector<int> from;         // predecessor face
};

BfsResult bfs(const FaceGraph& graph, int faces, int source) {
  BfsResult r;
  r.dist.assign(faces, std::numeric_limits<int>::max());
  r.via.assign(faces, nullptr);
  r.from.assign(faces, -1);
  std::queue<int> q;
  r.dist[source] = 0;
  q.push(source);
  while (!q.empty()) {
    const int f = q.front();
    q.pop();
    for (const Link& l : graph.links(f)) {
      if (r.dist[l.to_face] != std::numeric_limits<int>::max()) continue;
      r.dist[l.to_face] = r.dist[f] + 1;
      r.via[l.to_face] = &l;
      r.from[l.to_face] = f;
      q.push(l.to_face);
    }
  }
  return r;
}

// Depth-first version of the greedy walk: in each slice try tunnels by the
// number of boundary points passed from the entry point, never re-entering a
// slice. The first branch that reaches the target slice wins.
class GreedyWalk {
 public:
  GreedyWalk(const FaceGraph& graph, const SliceMap& map, int target_face)
      : graph_(graph), map_(map), target_(target_face), visited_(map.slices().size(), false) {}

  bool run(int face, const SubGap& entry) {
    visited_[face] = true;
    if (face == target_) return true;
    const Slice& s = map_.slices()[face];
    const int len = static_cast<int>(s.walk.size());
    const int entry_pos = position(s, entry);
    std::vector<std::tuple<int, int, const Link*>> order;
    for (const Link& l : graph_.links(face)) {
      const int fwd = (position(s, l.here) - entry_pos + len) % len;
      order.emplace_back(std::min(fwd, len - fwd), fwd, &l);
    }
    std::sort(order.begin(), order.end());
    for (const auto& [dist, fwd, link] : order) {
      if (visited_[link->to_face]) continue;
      hops.push_back(link);
      if (run(link->to_face, link->there)) return true;
      hops.pop_back();
    }
    return false;
  }

  std::vector<const Link*> hops;

 private:
  static int position(const Slice& s, const SubGap& g) {
    for (int i = 0; i < static_cast<int>(s.walk.size()); ++i) {
      if (s.walk[i] == g) return i;
    }
    throw RoutingError("gap not on slice boundary");
  }

  const FaceGraph& graph_;
  const SliceMap& map_;
  int target_;
  std::vector<bool> visited_;
};

void insert_route(RoutedFrame& rf, const Net& net, const SubGap& start_gap,
                  const SubGap& end_gap, const std::vector<const Link*>& hops) {
  std::vector<std::pair<SubGap, SubGap>> chords;
  SubGap from = start_gap;
  for (const Link* l : hops) {
    chords.emplace_back(from, l->here);
    from = l->there;
  }
  chords.emplace_back(from, end_gap);

  NetRoute route;
  route.net = net.index;
  route.chords = rf.insert_chords(net.index, chords);
  for (const auto& [a, b] : chords) {
    route.vertices.push_back(a.vertex);
    route.vertices.push_back(b.vertex);
  }
  rf.record_route(std::move(route));
}

}  // namespace

void route_net(RoutedFrame& rf, const Environment& env, const Net& net,
               const RoutingStrategy& strategy, const RouteGeometry* geo) {
  if (rf.route_of(net.index) != nullptr) {
    throw RoutingError("net " + std::to_string(net.index) + " is already routed");
  }
  const int size = rf.frame().size();
  const std::vector<int> starts = free_copies(rf, env.start_index(net));
  const std::vector<int> ends = free_copies(rf, env.end_index(net));
  if (starts.empty() || ends.empty()) {
    throw RoutingError("net " + std::to_string(net.index) + " has no free start or end copy");
  }

  const SliceMap map(rf);
  const FaceGraph graph(rf, map);
  const int faces = static_cast<int>(map.slices().size());

  if (strategy.tunnel_selection == TunnelSelection::kShortestPlanar && geo != nullptr) {
    const bool first_listed = strategy.copy_selection == CopySelection::kFirstListed;
    const detail::PlanarPlan plan = detail::plan_shortest(
        rf, graph, map, *geo, first_listed ? std::vector<int>{starts.front()} : starts,
        first_listed ? std::vector<int>{ends.front()} : ends, env.start_index(net),
        env.end_index(net));
    if (plan.start >= 0) {
      insert_route(rf, net, {plan.start, 0}, {plan.end, 0}, plan.hops);
      return;
    }
  }

  // Pick the copy pair.
  int best_s = -1;
  int best_t = -1;
  std::tuple<int, int, int, int> best_key{std::numeric_limits<int>::max(), 0, 0, 0};
  const bool first_listed = strategy.copy_selection == CopySelection::kFirstListed;
  const bool greedy = strategy.tunnel_selection == TunnelSelection::kPaperGreedy;
  for (int cs : first_listed ? std::vector<int>{starts.front()} : starts) {
    std::vector<int> dist(faces, 0);
    if (!greedy) {
      dist = bfs(graph, faces, map.face(cs, 0)).dist;
    }
    for (int ct : first_listed ? std::vector<int>{ends.front()} : ends) {
      const auto key = std::make_tuple(dist[map.face(ct, 0)], ring_distance(cs, ct, size), cs, ct);
      if (key < best_key) {
        best_key = key;
        best_s = cs;
        best_t = ct;
      }
    }
  }
  if (best_s < 0) {
    throw RoutingError("no reachable end copy for net " + std::to_string(net.index));
  }
  const SubGap start_gap{best_s, 0};
  const SubGap end_gap{best_t, 0};
  const int source = map.face(start_gap);
  const int target = map.face(end_gap);

  std::vector<const Link*> hops;
  if (source != target) {
    if (!greedy) {
      const BfsResult r = bfs(graph, faces, source);
      if (r.dist[target] == std::numeric_limits<int>::max()) {
        throw RoutingError("target slice unreachable for net " + std::to_string(net.index));
      }
      for (int f = target; f != source; f = r.from[f]) hops.push_back(r.via[f]);
      std::reverse(hops.begin(), hops.end());
    } else {
      GreedyWalk walk(graph, map, target);
      if (!walk.run(source, start_gap)) {
        throw RoutingError("greedy walk exhausted for net " + std::to_string(net.index));
      }
      hops = walk.hops;
    }
  }

  insert_route(rf, net, start_gap, end_gap, hops);
}

RoutedFrame route_all(const Frame& frame, const Environment& env, const std::vector<Net>& nets,
                      const RoutingStrategy& strategy, const RouteGeometry* geo) {
  RoutedFrame rf(frame);
  std::vector<Net> order = nets;
  if (strategy.net_order == NetOrder::kByIndex) {
    std::stable_sort(order.begin(), order.end(),
                     [](const Net& a, const Net& b) { return a.index < b.index; });
  }
  for (const Net& net : order) route_net(rf, env, net, strategy, geo);
  return rf;
}

std::vector<TunnelCrossing> tunnel_crossings(const RoutedFrame& rf, int net) {
  const NetRoute* route = rf.route_of(net);
  if (route == nullptr) throw RoutingError("net " + std::to_string(net) + " is not routed");
  std::vector<TunnelCrossing> out;
  for (std::size_t i = 0; i + 1 < route->chords.size(); ++i) {
    const int entry = route->vertices[2 * i + 1];
    const FrameVertex& v = rf.frame().ring[entry];
    out.push_back({v.edge_id, v.side, entry, route->vertices[2 * i + 2]});
  }
  return out;
}

TopologicalClass extract_topological_class(const RoutedFrame& rf, const Forest& forest,
                                           const Environment& env, const Net& net) {
  const NetRoute* route = rf.route_of(net.index);
  if (route == nullptr) {
    throw RoutingError("net " + std::to_string(net.index) + " is not routed");
  }
  TopologicalClass cls;
  cls.net = net.index;
  cls.pivots.push_back(env.start_index(net));
  cls.orientations.push_back(0);
  cls.heights.push_back(0);
  const auto crossings = tunnel_crossings(rf, net.index);
  for (std::size_t i = 0; i < crossings.size(); ++i) {
    const TunnelCrossing& c = crossings[i];
    const int k = rf.end_count(c.entry_vertex);
    const int r = rf.rank(route->chords[i], c.entry_vertex);
    cls.pivots.push_back(forest.edge(c.edge_id).b);
    cls.orientations.push_back(c.entry_side == Side::kA ? +1 : -1);
    cls.heights.push_back(c.entry_side == Side::kA ? k - r : 1 + r);
  }
  cls.pivots.push_back(env.end_index(net));
  cls.orientations.push_back(0);
  cls.heights.push_back(0);
  return cls;
}

}  // namespace cframe
