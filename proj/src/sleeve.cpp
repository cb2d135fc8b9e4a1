#include "cframe/sleeve.hpp"

#include <algorithm>
#include <queue>

#include "cframe/router.hpp"

namespace cframe {

namespace {

// Shortest triangle path inside the cut disk from `from` to any triangle in `targets`.
std::vector<int> disk_path(const Triangulation& tr, int from, const std::vector<int>& targets) {
  std::vector<int> prev(tr.size(), -2);
  std::queue<int> q;
  prev[from] = -1;
  q.push(from);
  int hit = -1;
  while (!q.empty()) {
    const int t = q.front();
    q.pop();
    if (std::find(targets.begin(), targets.end(), t) != targets.end()) {
      hit = t;
      break;
    }
    for (int i = 0; i < 3; ++i) {
      const int u = tr.neighbours[t][i];
      if (u < 0 || tr.forest_edge[t][i] >= 0 || prev[u] != -2) continue;
      prev[u] = t;
      q.push(u);
    }
  }
  if (hit < 0) throw RoutingError("sleeve target unreachable inside the cut disk");
  std::vector<int> path;
  for (int t = hit; t != -1; t = prev[t]) path.push_back(t);
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace

std::vector<int> sector_triangles(const Triangulation& tr, const Forest& forest, int node,
                                  int in, int out) {
  std::vector<int> fan;
  for (int t = 0; t < tr.size(); ++t) {
    const int c = tr.corner_of(t, node);
    if (c < 0) continue;
    if (in < 0 || in == out) {
      fan.push_back(t);
      continue;
    }
    const PlanePoint p = tr.points[node];
    const PlanePoint mid =
        (tr.points[tr.triangles[t][(c + 1) % 3]] + tr.points[tr.triangles[t][(c + 2) % 3]]) * 0.5;
    const double a_in = forest.edge_angle(in, node);
    const double a_out = forest.edge_angle(out, node);
    const double span = normalize_angle(a_in - a_out);
    const double at = normalize_angle(a_in - angle_of(mid - p));
    if (at > 0.0 && at < span) fan.push_back(t);
  }
  return fan;
}

Sleeve build_sleeve(const Triangulation& tr, const Forest& forest, const RoutedFrame& rf,
                    const Environment& env, const Net& net) {
  const NetRoute* route = rf.route_of(net.index);
  if (route == nullptr) throw RoutingError("net " + std::to_string(net.index) + " is not routed");
  const Frame& frame = rf.frame();
  Sleeve sl;
  sl.net = net.index;
  sl.start_vertex = env.start_index(net);
  sl.end_vertex = env.end_index(net);

  const FrameVertex& sv = frame.ring[route->vertices.front()];
  const FrameVertex& tv = frame.ring[route->vertices.back()];
  const auto start_fan = sector_triangles(tr, forest, sl.start_vertex, sv.sector_in, sv.sector_out);
  const auto end_fan = sector_triangles(tr, forest, sl.end_vertex, tv.sector_in, tv.sector_out);
  if (start_fan.empty() || end_fan.empty()) throw RoutingError("empty copy sector");

  std::vector<int> raw{start_fan.front()};
  for (const TunnelCrossing& c : tunnel_crossings(rf, net.index)) {
    const auto& sides = tr.side_triangles[c.edge_id - 1];
    const int entry = sides[c.entry_side == Side::kA ? 0 : 1];
    const int exit = sides[c.entry_side == Side::kA ? 1 : 0];
    const auto leg = disk_path(tr, raw.back(), {entry});
    raw.insert(raw.end(), leg.begin() + 1, leg.end());
    raw.push_back(exit);
  }
  const auto leg = disk_path(tr, raw.back(), end_fan);
  raw.insert(raw.end(), leg.begin() + 1, leg.end());

  for (int t : raw) {
    const int n = static_cast<int>(sl.triangles.size());
    if (n >= 2 && sl.triangles[n - 2] == t) {
      sl.triangles.pop_back();
    } else if (n == 0 || sl.triangles.back() != t) {
      sl.triangles.push_back(t);
    }
  }
  auto& ts = sl.triangles;
  std::size_t first = 0;
  while (first + 1 < ts.size() && tr.has_vertex(ts[first + 1], sl.start_vertex)) ++first;
  ts.erase(ts.begin(), ts.begin() + static_cast<std::ptrdiff_t>(first));
  std::size_t last = ts.size() - 1;
  while (last > 0 && tr.has_vertex(ts[last - 1], sl.end_vertex)) --last;
  ts.resize(last + 1);
  return sl;
}

std::vector<Bend> funnel(const Triangulation& tr, const Sleeve& sl) {
  struct Portal {
    int left;
    int right;
  };
  std::vector<Portal> portals{{sl.start_vertex, sl.start_vertex}};
  for (int k = 1; k < sl.size(); ++k) {
    const int t = sl.triangles[k - 1];
    const int i = tr.shared_edge(t, sl.triangles[k]);
    if (i < 0) throw RoutingError("sleeve triangles are not adjacent");
    portals.push_back({tr.triangles[t][(i + 2) % 3], tr.triangles[t][(i + 1) % 3]});
  }
  portals.push_back({sl.end_vertex, sl.end_vertex});

  const auto& P = tr.points;
  std::vector<Bend> bends;
  int apex = sl.start_vertex;
  int left = apex;
  int right = apex;
  int apex_i = 0;
  int left_i = 0;
  int right_i = 0;
  const int count = static_cast<int>(portals.size());
  for (int i = 1; i < count; ++i) {
    const int l = portals[i].left;
    const int r = portals[i].right;
    if (orient(P[apex], P[right], P[r]) >= 0) {
      if (apex == right || apex == left || orient(P[apex], P[left], P[r]) < 0) {
        right = r;
        right_i = i;
      } else {
        bends.push_back({left, +1, left_i});
        apex = left;
        apex_i = left_i;
        right = left = apex;
        right_i = left_i = apex_i;
        i = apex_i;
        continue;
      }
    }
    if (orient(P[apex], P[left], P[l]) <= 0) {
      if (apex == left || apex == right || orient(P[apex], P[right], P[l]) > 0) {
        left = l;
        left_i = i;
      } else {
        bends.push_back({right, -1, right_i});
        apex = right;
        apex_i = right_i;
        right = left = apex;
        right_i = left_i = apex_i;
        i = apex_i;
        continue;
      }
    }
  }
  return bends;
}

namespace {

// Perimeter positions 0..5: corner k at 2k, edge from corner k to k+1 at 2k+1.
int entry_position(const Triangulation& tr, const Sleeve& s, int i) {
  const int t = s.triangles[i];
  if (i == 0) return 2 * tr.corner_of(t, s.start_vertex);
  const int e = tr.shared_edge(t, s.triangles[i - 1]);
  return (2 * e + 3) % 6;
}

int exit_position(const Triangulation& tr, const Sleeve& s, int i) {
  const int t = s.triangles[i];
  if (i + 1 == s.size()) return 2 * tr.corner_of(t, s.end_vertex);
  const int e = tr.shared_edge(t, s.triangles[i + 1]);
  return (2 * e + 3) % 6;
}

bool strictly_ccw_between(int p, int from, int to) {
  const int dp = (p - from + 6) % 6;
  const int dt = (to - from + 6) % 6;
  return dp > 0 && dp < dt;
}

// -1 if a is left of b inside one triangle, +1 if right, 0 if parallel.
int lateral_in_triangle(int ea, int xa, int eb, int xb) {
  for (int p : {eb, xb}) {
    if (p == ea || p == xa) continue;
    return strictly_ccw_between(p, xa, ea) ? +1 : -1;
  }
  return 0;
}

}  // namespace

int lateral_order(const Triangulation& tr, const Sleeve& a, int i, const Sleeve& b, int j) {
  for (int k = 0; i + k < a.size() && j + k < b.size(); ++k) {
    if (a.triangles[i + k] != b.triangles[j + k]) break;
    const int r = lateral_in_triangle(entry_position(tr, a, i + k), exit_position(tr, a, i + k),
                                      entry_position(tr, b, j + k), exit_position(tr, b, j + k));
    if (r != 0) return r;
  }
  for (int k = 1; i - k >= 0 && j - k >= 0; ++k) {
    if (a.triangles[i - k] != b.triangles[j - k]) break;
    const int r = lateral_in_triangle(entry_position(tr, a, i - k), exit_position(tr, a, i - k),
                                      entry_position(tr, b, j - k), exit_position(tr, b, j - k));
    if (r != 0) return r;
  }
  return 0;
}

int vertex_side(const Triangulation& tr, const Sleeve& s, int i, int v) {
  const int p = 2 * tr.corner_of(s.triangles[i], v);
  const int e = entry_position(tr, s, i);
  const int x = exit_position(tr, s, i);
  if (p == e || p == x) return 0;
  return strictly_ccw_between(p, x, e) ? +1 : -1;
}

int shared_stretch(const Sleeve& a, int i, const Sleeve& b, int j) {
  int n = 0;
  for (int k = 0; i + k < a.size() && j + k < b.size() && a.triangles[i + k] == b.triangles[j + k]; ++k) ++n;
  for (int k = 1; i - k >= 0 && j - k >= 0 && a.triangles[i - k] == b.triangles[j - k]; ++k) ++n;
  return n;
}

}  // namespace cframe
