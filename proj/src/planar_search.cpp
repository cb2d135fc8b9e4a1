#include <algorithm>
#include <cmath>
#include <limits>
#include <cstdint>
#include <queue>
#include <unordered_map>

#include "cframe/sleeve.hpp"
#include "face_graph.hpp"

namespace cframe::detail {

FaceGraph::FaceGraph(const RoutedFrame& rf, const SliceMap& map) : links_(map.slices().size()) {
  const Frame& frame = rf.frame();
  for (const Slice& s : map.slices()) {
    links_[s.id].reserve(s.walk.size());
    for (const SubGap& g : s.walk) {
      if (!frame.ring[g.vertex].is_tree_point()) continue;
      const int partner = frame.partner(g.vertex);
      const int k = rf.end_count(g.vertex);
      const SubGap there{partner, k - g.gap};
      links_[s.id].push_back({g, there, map.face(there)});
    }
  }
  const int size = frame.size();
  offset_.assign(size + 1, 0);
  for (int v = 0; v < size; ++v) offset_[v + 1] = offset_[v] + rf.end_count(v) + 1;
  by_gap_.assign(offset_[size], nullptr);
  for (const auto& face : links_) {
    for (const Link& l : face) by_gap_[offset_[l.here.vertex] + l.here.gap] = &l;
  }
}

int ring_distance(int a, int b, int size) {
  const int d = std::abs(a - b);
  return std::min(d, size - d);
}

namespace {

// Any-angle search over the triangulation in the style of Polyanya: a node
// is an interval on a triangle edge seen from a root vertex, or a sweep
// around a root vertex through its fan of triangles. Crossing a forest edge
// takes a tunnel link of the current slice.

constexpr int kMaxNodes = 200000;

struct FrameState {
  int face = -1;
  SubGap entry;        // gap where the current slice was entered
  int crossing = -1;   // last tunnel crossing, -1 before the first
  int source = -1;     // start copy
};

struct Crossing {
  int face;
  SubGap entry;
  const Link* link;
  int prev;
};

enum class Kind { kInterval, kFan, kGoal };

struct Node {
  Kind kind = Kind::kInterval;
  // Interval: the interval lies on edge `edge` of `tri` and the search moves
  // on into the neighbour across it. Fan: sweeping `tri`, entered through `edge`.
  int tri = -1;
  int edge = -1;
  PlanePoint p;
  PlanePoint q;
  int p_vertex = -1;
  int q_vertex = -1;
  int root = -1;
  double g = 0.0;  // path length up to the root
  int steps = 0;
  PlanePoint dir;  // fan: direction of arrival at the root
  int turn = 0;    // fan: +1 sweeping anti-clockwise, -1 clockwise
  FrameState fs;
  int end_copy = -1;
};

int sign(double v) { return (v > 0) - (v < 0); }

class Search {
 public:
  Search(const RoutedFrame& rf, const FaceGraph& graph, const SliceMap& map,
         const RouteGeometry& geo)
      : rf_(rf), graph_(graph), map_(map), tr_(*geo.triangulation), forest_(*geo.forest) {
    const int size = rf.frame().size();
    offset_.assign(size + 1, 0);
    for (int v = 0; v < size; ++v) offset_[v + 1] = offset_[v] + rf.end_count(v) + 1;
    position_.assign(offset_[size], -1);
    for (const Slice& s : map.slices()) {
      for (int i = 0; i < static_cast<int>(s.walk.size()); ++i) position_[flat(s.walk[i])] = i;
    }
    faces_ = static_cast<int>(map.slices().size());
    nodes_.reserve(512);
  }

  PlanarPlan run(const std::vector<int>& starts, const std::vector<int>& ends, int start_entity,
                 int end_entity) {
    const Frame& frame = rf_.frame();
    goal_ = end_entity;
    goal_at_ = tr_.points[end_entity];
    ends_at_.assign(tr_.size(), {});
    for (int ct : ends) {
      const FrameVertex& v = frame.ring[ct];
      for (int t : sector_triangles(tr_, forest_, end_entity, v.sector_in, v.sector_out)) {
        ends_at_[t].push_back(ct);
      }
    }

    for (int cs : starts) {
      const FrameVertex& v = frame.ring[cs];
      const FrameState fs{map_.face(cs, 0), {cs, 0}, -1, cs};
      root_allowed(start_entity, fs, 0.0);
      for (int t : sector_triangles(tr_, forest_, start_entity, v.sector_in, v.sector_out)) {
        const int c = tr_.corner_of(t, start_entity);
        try_goal_in(t, fs, start_entity, 0.0);
        push_far_edge(t, c, start_entity, 0.0, fs);
      }
    }

    PlanarPlan plan;
    while (!open_.empty() && static_cast<int>(nodes_.size()) < kMaxNodes) {
      const auto [f, id] = open_.top();
      open_.pop();
      const Node n = nodes_[id];
      if (n.kind == Kind::kGoal) {
        plan.start = n.fs.source;
        plan.end = n.end_copy;
        plan.length = n.g;
        for (int i = n.fs.crossing; i >= 0; i = crossings_[i].prev) {
          plan.hops.push_back(crossings_[i].link);
        }
        std::reverse(plan.hops.begin(), plan.hops.end());
        return plan;
      }
      if (n.kind == Kind::kInterval) {
        expand_interval(n);
      } else {
        expand_fan(n);
      }
    }
    return plan;
  }

 private:
  const PlanePoint& pos(int v) const { return tr_.points[v]; }
  int flat(const SubGap& g) const { return offset_[g.vertex] + g.gap; }

  void push(Node n, double h) {
    nodes_.push_back(std::move(n));
    open_.emplace(nodes_.back().g + h, static_cast<int>(nodes_.size()) - 1);
  }

  // Lower bound from the root through the interval to the goal.
  double interval_h(const Node& n) const {
    const PlanePoint r = pos(n.root);
    PlanePoint e = goal_at_;
    const PlanePoint d = n.q - n.p;
    const double len2 = dot(d, d);
    if (len2 > 0.0) {
      const double sr = cross(d, r - n.p);
      const double se = cross(d, e - n.p);
      if ((sr > 0) == (se > 0) && se != 0.0) {
        const PlanePoint foot = n.p + d * (dot(e - n.p, d) / len2);
        e = foot * 2.0 - e;
      }
      const double a = cross(e - r, n.p - r);
      const double b = cross(e - r, n.q - r);
      if ((a <= 0 && b >= 0) || (a >= 0 && b <= 0)) return distance(r, e);
    }
    return std::min(distance(r, n.p) + distance(n.p, e), distance(r, n.q) + distance(n.q, e));
  }

  // Calls emit for each frame state that results from moving from `tri`
  // across its edge `edge`.
  template <class Emit>
  void cross_edge(const FrameState& fs, int tri, int edge, Emit&& emit) {
    const int k = tr_.forest_edge[tri][edge];
    if (k < 0) {
      emit(fs);
      return;
    }
    const Side side = tr_.side_triangles[k][0] == tri ? Side::kA : Side::kB;
    const int here = rf_.frame().tunnel_vertex(k + 1, side);
    // A slice meets each ring vertex at most once.
    for (int j = 0; j <= rf_.end_count(here); ++j) {
      const SubGap g{here, j};
      if (map_.face(g) != fs.face) continue;
      const Link& l = *graph_.link_from(g);
      if (!fits(fs, l.here, &l.there)) return;
      crossings_.push_back({fs.face, fs.entry, &l, fs.crossing});
      emit(FrameState{l.to_face, l.there, static_cast<int>(crossings_.size()) - 1, fs.source});
      return;
    }
  }

  // Can the chord from fs.entry to exit close the current slice visit, with
  // the walk continuing at `next` when a tunnel is taken?
  bool fits(const FrameState& fs, const SubGap& exit, const SubGap* next = nullptr) const {
    if (fs.entry.vertex == exit.vertex) return false;
    const int e = position_[flat(fs.entry)];
    const int x = position_[flat(exit)];
    for (int i = fs.crossing; i >= 0; i = crossings_[i].prev) {
      const Crossing& c = crossings_[i];
      for (const SubGap& used : {c.entry, c.link->here, c.link->there}) {
        if (used == exit || (next != nullptr && used == *next)) return false;
      }
      if (c.face == fs.face &&
          interleave(e, x, position_[flat(c.entry)], position_[flat(c.link->here)])) {
        return false;
      }
    }
    return true;
  }

  static bool interleave(int a1, int a2, int b1, int b2) {
    if (a2 < a1) std::swap(a1, a2);
    return (a1 < b1 && b1 < a2) != (a1 < b2 && b2 < a2);
  }

  // Goal reached inside triangle t along a last leg from `from` (cost g so far).
  void try_goal_in(int t, const FrameState& fs, int from, double g) {
    if (!tr_.has_vertex(t, goal_) || from == goal_) return;
    for (int ct : ends_at_[t]) {
      if (map_.face(ct, 0) != fs.face || !fits(fs, {ct, 0})) continue;
      Node n;
      n.kind = Kind::kGoal;
      n.g = g + distance(pos(from), goal_at_);
      n.fs = fs;
      n.end_copy = ct;
      push(std::move(n), 0.0);
    }
  }

  void try_goal_at(int t, const FrameState& fs, double total) {
    for (int ct : ends_at_[t]) {
      if (map_.face(ct, 0) != fs.face || !fits(fs, {ct, 0})) continue;
      Node n;
      n.kind = Kind::kGoal;
      n.g = total;
      n.fs = fs;
      n.end_copy = ct;
      push(std::move(n), 0.0);
    }
  }

  // Interval covering the whole edge of t opposite corner c, seen from root.
  void push_far_edge(int t, int c, int root, double g, const FrameState& fs) {
    const int a = tr_.triangles[t][(c + 1) % 3];
    const int b = tr_.triangles[t][(c + 2) % 3];
    push_interval(t, c, pos(a), a, pos(b), b, root, g, fs);
  }

  void push_interval(int t, int edge, const PlanePoint& p, int pv, const PlanePoint& q, int qv,
                     int root, double g, const FrameState& fs) {
    if (tr_.neighbours[t][edge] < 0) return;
    const PlanePoint d = q - p;
    if (dot(d, d) < 1e-20) return;
    cross_edge(fs, t, edge, [&](const FrameState& next) {
      Node n;
      n.kind = Kind::kInterval;
      n.tri = t;
      n.edge = edge;
      n.p = p;
      n.q = q;
      n.p_vertex = pv;
      n.q_vertex = qv;
      n.root = root;
      n.g = g;
      n.fs = next;
      const double h = interval_h(n);
      push(std::move(n), h);
    });
  }

  // Sweep around root into triangle t, entered through its edge `edge`.
  void push_fan(int t, int edge, int root, double g, int steps, const PlanePoint& dir, int turn,
                const FrameState& fs) {
    const int u = tr_.neighbours[t][edge];
    if (u < 0 || turn == 0 || steps > 24) return;
    cross_edge(fs, t, edge, [&](const FrameState& next) {
      Node n;
      n.kind = Kind::kFan;
      n.tri = u;
      n.edge = tr_.shared_edge(u, t);
      n.root = root;
      n.g = g;
      n.steps = steps;
      n.dir = dir;
      n.turn = turn;
      n.fs = next;
      push(std::move(n), distance(pos(root), goal_at_));
    });
  }

  bool root_allowed(int root, const FrameState& fs, double g) {
    const std::int64_t key =
        (static_cast<std::int64_t>(root) * faces_ + fs.face) * offset_.back() + flat(fs.entry);
    const auto it = root_best_.find(key);
    if (it != root_best_.end() && g > it->second + 1e-9) return false;
    root_best_[key] = it == root_best_.end() ? g : std::min(it->second, g);
    return true;
  }

  // Position along the far boundary A -> C -> B of the ray from r through x:
  // [0, 1] on A-C, [1, 2] on C-B.
  static double far_phi(const PlanePoint& r, const PlanePoint& x, bool x_is_b, const PlanePoint& a,
                        const PlanePoint& b, const PlanePoint& c) {
    const double sb = x_is_b ? -orient(r, x, a) : orient(r, x, b);
    const double oc = orient(r, x, c);
    if (std::abs(oc) < 1e-12) return 1.0;
    if ((oc > 0) == (sb > 0)) {
      const double oa = orient(r, x, a);
      return std::clamp(oa / (oa - oc), 0.0, 1.0);
    }
    const double ob = orient(r, x, b);
    return 1.0 + std::clamp(oc / (oc - ob), 0.0, 1.0);
  }

  void expand_interval(const Node& n) {
    const int u = tr_.neighbours[n.tri][n.edge];
    const int j = tr_.shared_edge(u, n.tri);
    const int ia = (j + 1) % 3;
    const int ib = (j + 2) % 3;
    const int A = tr_.triangles[u][ia];
    const int B = tr_.triangles[u][ib];
    const int C = tr_.triangles[u][j];
    const PlanePoint pa = pos(A);
    const PlanePoint pb = pos(B);
    const PlanePoint pc = pos(C);

    PlanePoint p = n.p;
    PlanePoint q = n.q;
    int pv = n.p_vertex;
    int qv = n.q_vertex;
    const PlanePoint ab = pb - pa;
    if (dot(p - pa, ab) > dot(q - pa, ab)) {
      std::swap(p, q);
      std::swap(pv, qv);
    }
    const PlanePoint r = pos(n.root);
    double phi_p = far_phi(r, p, pv == B, pa, pb, pc);
    double phi_q = far_phi(r, q, qv == B, pa, pb, pc);
    if (phi_p > phi_q) std::swap(phi_p, phi_q);

    auto at = [&](double phi) { return phi <= 1.0 ? pa + (pc - pa) * phi : pc + (pb - pc) * (phi - 1.0); };
    auto vertex_at = [&](double phi) { return phi == 0.0 ? A : phi == 1.0 ? C : phi == 2.0 ? B : -1; };
    const int edge_ac = ib;  // opposite B
    const int edge_cb = ia;  // opposite A

    // Goal inside u.
    if (!ends_at_[u].empty()) {
      if (C == goal_) {
        if (phi_p <= 1.0 && phi_q >= 1.0) {
          try_goal_at(u, n.fs, n.g + distance(r, pc));
        } else if (phi_p > 1.0 && pv == A) {
          try_goal_at(u, n.fs, n.g + distance(r, pa) + distance(pa, pc));
        } else if (phi_q < 1.0 && qv == B) {
          try_goal_at(u, n.fs, n.g + distance(r, pb) + distance(pb, pc));
        }
      }
    }
    if (!ends_at_[n.tri].empty()) {
      if (pv == goal_) try_goal_at(n.tri, n.fs, n.g + distance(r, pa));
      if (qv == goal_) try_goal_at(n.tri, n.fs, n.g + distance(r, pb));
    }

    // Observable part, same root.
    auto push_range = [&](double lo, double hi, int root, double g) {
      if (lo < 1.0) {
        const double top = std::min(hi, 1.0);
        if (top > lo) push_interval(u, edge_ac, at(lo), vertex_at(lo), at(top), vertex_at(top), root, g, n.fs);
      }
      if (hi > 1.0) {
        const double bottom = std::max(lo, 1.0);
        if (hi > bottom) push_interval(u, edge_cb, at(bottom), vertex_at(bottom), at(hi), vertex_at(hi), root, g, n.fs);
      }
    };
    push_range(phi_p, phi_q, n.root, n.g);

    // Turning around A or B.
    if (pv == A && A != goal_ && phi_p > 1e-12) {
      const double g = n.g + distance(r, pa);
      if (root_allowed(A, n.fs, g)) {
        if (phi_p > 1.0) push_range(1.0, phi_p, A, g);
        const PlanePoint dir = pa - r;
        push_fan(u, edge_ac, A, g, 0, dir, sign(cross(dir, pc - pa)), n.fs);
      }
    }
    if (qv == B && B != goal_ && phi_q < 2.0 - 1e-12) {
      const double g = n.g + distance(r, pb);
      if (root_allowed(B, n.fs, g)) {
        if (phi_q < 1.0) push_range(phi_q, 1.0, B, g);
        const PlanePoint dir = pb - r;
        push_fan(u, edge_cb, B, g, 0, dir, sign(cross(dir, pc - pb)), n.fs);
      }
    }
  }

  // A taut path turns by less than a half turn at its root, so the sweep
  // stops at the line through the root along the arrival direction.
  void expand_fan(const Node& n) {
    const int t = n.tri;
    const int cv = tr_.corner_of(t, n.root);
    if (cv < 0) return;
    const PlanePoint a = pos(n.root);
    const int x = tr_.triangles[t][(cv + 1) % 3];
    const int y = tr_.triangles[t][(cv + 2) % 3];
    const double sx = n.turn * cross(n.dir, pos(x) - a);
    const double sy = n.turn * cross(n.dir, pos(y) - a);
    try_goal_in(t, n.fs, n.root, n.g);
    if (sx >= 0 && sy >= 0) {
      push_far_edge(t, cv, n.root, n.g, n.fs);
    } else if (sx >= 0 || sy >= 0) {
      const PlanePoint cut = pos(x) + (pos(y) - pos(x)) * (sx / (sx - sy));
      if (sx >= 0) {
        push_interval(t, cv, pos(x), x, cut, -1, n.root, n.g, n.fs);
      } else {
        push_interval(t, cv, cut, -1, pos(y), y, n.root, n.g, n.fs);
      }
    }
    const int e1 = (cv + 1) % 3;
    const int e2 = (cv + 2) % 3;
    const int next = n.edge == e1 ? e2 : e1;
    const double s_next = next == e1 ? sy : sx;  // the far corner on the next edge
    if (s_next > 0) push_fan(t, next, n.root, n.g, n.steps + 1, n.dir, n.turn, n.fs);
  }


  const RoutedFrame& rf_;
  const FaceGraph& graph_;
  const SliceMap& map_;
  const Triangulation& tr_;
  const Forest& forest_;
  std::vector<int> offset_;
  std::vector<int> position_;
  int faces_ = 0;
  int goal_ = -1;
  PlanePoint goal_at_;
  std::vector<std::vector<int>> ends_at_;
  std::vector<Node> nodes_;
  std::vector<Crossing> crossings_;
  std::unordered_map<std::int64_t, double> root_best_;
  using Entry = std::pair<double, int>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open_;
};

}  // namespace

PlanarPlan plan_shortest(const RoutedFrame& rf, const FaceGraph& graph, const SliceMap& map,
                         const RouteGeometry& geo, const std::vector<int>& starts,
                         const std::vector<int>& ends, int start_entity, int end_entity) {
  return Search(rf, graph, map, geo).run(starts, ends, start_entity, end_entity);
}

}  // namespace cframe::detail
