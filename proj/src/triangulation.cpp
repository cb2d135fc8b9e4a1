#include "cframe/triangulation.hpp"

#include <algorithm>
#include <tuple>

namespace cframe {

bool Triangulation::has_vertex(int t, int v) const { return corner_of(t, v) >= 0; }

int Triangulation::corner_of(int t, int v) const {
  for (int i = 0; i < 3; ++i) {
    if (triangles[t][i] == v) return i;
  }
  return -1;
}

int Triangulation::shared_edge(int t, int u) const {
  for (int i = 0; i < 3; ++i) {
    if (neighbours[t][i] == u) return i;
  }
  return -1;
}

namespace {

bool blocked_by_point(const std::vector<PlanePoint>& pts, int a, int b) {
  const PlanePoint d = pts[b] - pts[a];
  const double len2 = dot(d, d);
  for (int c = 0; c < static_cast<int>(pts.size()); ++c) {
    if (c == a || c == b) continue;
    const PlanePoint w = pts[c] - pts[a];
    const double cr = cross(d, w);
    if (cr * cr >= 1e-18 * len2) continue;
    const double t = dot(w, d);
    if (t > -1e-9 && t < len2 + 1e-9) return true;
  }
  return false;
}

}  // namespace

Triangulation triangulate(const Environment& env, const Forest& forest) {
  Triangulation tr;
  tr.entity_count = forest.entity_count;
  tr.points = forest.node_positions;
  const RectBoundary& bd = env.boundary;
  tr.points.push_back({bd.x_min, bd.y_min});
  tr.points.push_back({bd.x_max, bd.y_min});
  tr.points.push_back({bd.x_max, bd.y_max});
  tr.points.push_back({bd.x_min, bd.y_max});
  const int n = static_cast<int>(tr.points.size());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const PlanePoint d = tr.points[i] - tr.points[j];
      if (dot(d, d) < 1e-18) {
        throw ForestError("coincident triangulation vertices");
      }
    }
  }

  std::vector<std::pair<int, int>> edges;
  std::vector<int> forest_of(static_cast<std::size_t>(n) * n, -1);
  for (std::size_t k = 0; k < forest.edges.size(); ++k) {
    const auto& e = forest.edges[k];
    edges.emplace_back(e.a, e.b);
    forest_of[e.a * n + e.b] = forest_of[e.b * n + e.a] = static_cast<int>(k);
  }
  std::vector<std::pair<double, int>> around;
  for (int v = 0; v < n; ++v) {
    if (bd.on_boundary(tr.points[v])) around.emplace_back(bd.ccw_parameter(tr.points[v]), v);
  }
  std::sort(around.begin(), around.end());
  for (std::size_t i = 0; i < around.size(); ++i) {
    const int a = around[i].second;
    const int b = around[(i + 1) % around.size()].second;
    if (forest_of[a * n + b] < 0) edges.emplace_back(a, b);
  }

  std::vector<std::tuple<double, int, int>> candidates;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const PlanePoint d = tr.points[i] - tr.points[j];
      candidates.emplace_back(dot(d, d), i, j);
    }
  }
  std::sort(candidates.begin(), candidates.end());
  std::vector<char> present(static_cast<std::size_t>(n) * n, 0);
  // Edge boxes, stored by coordinate for a tight overlap scan.
  std::vector<double> bx0, by0, bx1, by1;
  auto accept = [&](int a, int b) {
    present[a * n + b] = present[b * n + a] = 1;
    const PlanePoint& p = tr.points[a];
    const PlanePoint& q = tr.points[b];
    bx0.push_back(std::min(p.x, q.x) - 1e-9);
    by0.push_back(std::min(p.y, q.y) - 1e-9);
    bx1.push_back(std::max(p.x, q.x) + 1e-9);
    by1.push_back(std::max(p.y, q.y) + 1e-9);
  };
  for (const auto& [u, v] : edges) accept(u, v);
  // A triangulation with `around.size()` points on the outer boundary has
  // exactly 3n - 3 - b edges; stop once it is complete.
  const std::size_t full = static_cast<std::size_t>(3 * n - 3) - around.size();
  for (const auto& [len, i, j] : candidates) {
    if (edges.size() >= full) break;
    if (present[i * n + j]) continue;
    const PlanePoint& p = tr.points[i];
    const PlanePoint& q = tr.points[j];
    const double x0 = std::min(p.x, q.x);
    const double y0 = std::min(p.y, q.y);
    const double x1 = std::max(p.x, q.x);
    const double y1 = std::max(p.y, q.y);
    bool ok = true;
    const std::size_t m = edges.size();
    for (std::size_t k = 0; k < m; ++k) {
      if (bx0[k] > x1 || bx1[k] < x0 || by0[k] > y1 || by1[k] < y0) continue;
      const auto& [u, v] = edges[k];
      if (segments_properly_interact(p, q, tr.points[u], tr.points[v])) {
        ok = false;
        break;
      }
    }
    if (!ok || blocked_by_point(tr.points, i, j)) continue;
    edges.emplace_back(i, j);
    accept(i, j);
  }

  // Rotation system and face tracing.
  std::vector<std::vector<int>> adj(n);
  for (const auto& [u, v] : edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  for (int v = 0; v < n; ++v) {
    std::vector<std::pair<double, int>> by_angle;
    for (int u : adj[v]) by_angle.emplace_back(angle_of(tr.points[u] - tr.points[v]), u);
    std::sort(by_angle.begin(), by_angle.end());
    for (std::size_t k = 0; k < by_angle.size(); ++k) adj[v][k] = by_angle[k].second;
  }
  auto cw_next = [&](int v, int from) {
    const auto& a = adj[v];
    const auto k = std::find(a.begin(), a.end(), from) - a.begin();
    return a[(k + a.size() - 1) % a.size()];
  };
  std::vector<int> face_of_dart(static_cast<std::size_t>(n) * n, -1);
  for (int u = 0; u < n; ++u) {
    for (int v : adj[u]) {
      if (face_of_dart[u * n + v] >= 0) continue;
      const int w = cw_next(v, u);
      if (cw_next(w, v) != u || orient(tr.points[u], tr.points[v], tr.points[w]) <= 0) continue;
      const int t = tr.size();
      tr.triangles.push_back({u, v, w});
      face_of_dart[u * n + v] = t;
      face_of_dart[v * n + w] = t;
      face_of_dart[w * n + u] = t;
    }
  }
  tr.neighbours.assign(tr.size(), {-1, -1, -1});
  tr.forest_edge.assign(tr.size(), {-1, -1, -1});
  tr.side_triangles.assign(forest.edges.size(), {-1, -1});
  for (int t = 0; t < tr.size(); ++t) {
    for (int i = 0; i < 3; ++i) {
      const int a = tr.triangles[t][(i + 1) % 3];
      const int b = tr.triangles[t][(i + 2) % 3];
      tr.neighbours[t][i] = face_of_dart[b * n + a];
      const int k = forest_of[a * n + b];
      if (k >= 0) {
        tr.forest_edge[t][i] = k;
        tr.side_triangles[k][forest.edges[k].a == a ? 0 : 1] = t;
      }
    }
  }
  for (const auto& s : tr.side_triangles) {
    if (s[0] < 0 || s[1] < 0) throw ForestError("forest edge missing from triangulation");
  }
  return tr;
}

}  // namespace cframe
