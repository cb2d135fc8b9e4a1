#include "cframe/astar.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <tuple>

namespace cframe {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

struct Step {
  int dx;
  int dy;
};
constexpr Step kOrthogonal[] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
constexpr Step kDiagonal[] = {{1, 1}, {1, -1}, {-1, 1}, {-1, -1}};

double heuristic(GridVariant v, const GridNode& p, const GridNode& t) {
  return v == GridVariant::kAs1 ? heuristic_as1(p, t) : heuristic_as2(p, t);
}

}  // namespace

double heuristic_as1(const GridNode& p, const GridNode& t) {
  return std::abs(p.x - t.x) + std::abs(p.y - t.y);
}

double heuristic_as2(const GridNode& p, const GridNode& t) {
  const int dx = std::abs(p.x - t.x);
  const int dy = std::abs(p.y - t.y);
  return dx + dy - std::min(dx, dy);
}

Grid::Grid(const RectBoundary& boundary)
    : x0_(static_cast<int>(std::ceil(boundary.x_min))),
      y0_(static_cast<int>(std::ceil(boundary.y_min))),
      width_(static_cast<int>(std::floor(boundary.x_max)) - x0_ + 1),
      height_(static_cast<int>(std::floor(boundary.y_max)) - y0_ + 1),
      blocked_(static_cast<std::size_t>(width_) * height_, 0) {}

bool Grid::inside(const GridNode& p) const {
  return p.x >= x0_ && p.x < x0_ + width_ && p.y >= y0_ && p.y < y0_ + height_;
}

GridNode Grid::snap(const PlanePoint& p) const {
  const int x = std::clamp(static_cast<int>(std::lround(p.x)), x0_, x0_ + width_ - 1);
  const int y = std::clamp(static_cast<int>(std::lround(p.y)), y0_, y0_ + height_ - 1);
  return {x, y};
}

std::vector<GridNode> disk_nodes(const Grid& grid, const PlanePoint& center, double radius) {
  std::vector<GridNode> out;
  const int x_lo = static_cast<int>(std::ceil(center.x - radius));
  const int x_hi = static_cast<int>(std::floor(center.x + radius));
  const int y_lo = static_cast<int>(std::ceil(center.y - radius));
  const int y_hi = static_cast<int>(std::floor(center.y + radius));
  for (int y = y_lo; y <= y_hi; ++y) {
    for (int x = x_lo; x <= x_hi; ++x) {
      const GridNode p{x, y};
      if (grid.inside(p) && std::hypot(x - center.x, y - center.y) <= radius + 1e-12) {
        out.push_back(p);
      }
    }
  }
  const GridNode s = grid.snap(center);
  if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
  return out;
}

std::vector<GridNode> astar_search(const Grid& grid, GridNode start, GridNode goal,
                                   GridVariant variant) {
  const int size = grid.width() * grid.height();
  std::vector<double> g(size, std::numeric_limits<double>::infinity());
  std::vector<int> parent(size, -1);
  std::vector<char> closed(size, 0);
  // (f, h, x, y): lower f, then lower h, then lexicographic node.
  using Entry = std::tuple<double, double, int, int>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;

  const int s = grid.index(start);
  g[s] = 0.0;
  const double h0 = heuristic(variant, start, goal);
  open.emplace(h0, h0, start.x, start.y);

  auto relax = [&](int from_index, const GridNode& to, double cost) {
    if (!grid.inside(to) || grid.blocked(to)) return;
    const int ti = grid.index(to);
    if (closed[ti]) return;
    const double ng = g[from_index] + cost;
    if (ng < g[ti]) {
      g[ti] = ng;
      parent[ti] = from_index;
      const double h = heuristic(variant, to, goal);
      open.emplace(ng + h, h, to.x, to.y);
    }
  };

  while (!open.empty()) {
    const auto [f, h, x, y] = open.top();
    open.pop();
    const GridNode p{x, y};
    const int pi = grid.index(p);
    if (closed[pi]) continue;
    closed[pi] = 1;
    if (p == goal) {
      std::vector<GridNode> path;
      for (int i = pi; i >= 0; i = parent[i]) path.push_back(grid.node(i));
      std::reverse(path.begin(), path.end());
      return path;
    }
    for (const Step& st : kOrthogonal) relax(pi, {p.x + st.dx, p.y + st.dy}, 1.0);
    if (variant == GridVariant::kAs2) {
      for (const Step& st : kDiagonal) {
        const GridNode a{p.x + st.dx, p.y};
        const GridNode b{p.x, p.y + st.dy};
        const bool a_blocked = !grid.inside(a) || grid.blocked(a);
        const bool b_blocked = !grid.inside(b) || grid.blocked(b);
        if (a_blocked && b_blocked) continue;
        relax(pi, {p.x + st.dx, p.y + st.dy}, kSqrt2);
      }
    }
  }
  return {};
}

double grid_path_length(const std::vector<GridNode>& nodes) {
  double len = 0.0;
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    const bool diagonal = nodes[i].x != nodes[i - 1].x && nodes[i].y != nodes[i - 1].y;
    len += diagonal ? kSqrt2 : 1.0;
  }
  return len;
}

namespace {

// Centre to snapped node, measured in the variant's own step metric.
double stub_length(const PlanePoint& c, const GridNode& n, GridVariant variant) {
  const double dx = std::abs(c.x - n.x);
  const double dy = std::abs(c.y - n.y);
  if (variant == GridVariant::kAs1) return dx + dy;
  return std::max(dx, dy) + (kSqrt2 - 1.0) * std::min(dx, dy);
}

}  // namespace

GridRouteResult route_env_astar(const Environment& env, GridVariant variant,
                                const GridParams& params) {
  Grid grid(env.boundary);
  std::vector<std::vector<GridNode>> disks(env.entity_count());
  for (int e = 0; e < env.entity_count(); ++e) {
    disks[e] = disk_nodes(grid, env.entity(e).center, params.block_radius);
    for (const GridNode& p : disks[e]) grid.block(p);
  }

  std::vector<Net> order = env.nets;
  std::stable_sort(order.begin(), order.end(),
                   [](const Net& a, const Net& b) { return a.index < b.index; });

  GridRouteResult result;
  result.completed = true;
  for (const Net& net : order) {
    GridPath path;
    path.net = net.index;
    const int si = env.start_index(net);
    const int ti = env.end_index(net);
    for (int e : {si, ti}) {
      for (const GridNode& p : disks[e]) grid.unblock(p);
    }
    const GridNode start = grid.snap(env.entity(si).center);
    const GridNode goal = grid.snap(env.entity(ti).center);
    path.nodes = astar_search(grid, start, goal, variant);
    for (int e : {si, ti}) {
      for (const GridNode& p : disks[e]) grid.block(p);
    }
    if (path.nodes.empty()) {
      result.completed = false;
    } else {
      path.routed = true;
      path.length = stub_length(env.entity(si).center, start, variant) +
                    grid_path_length(path.nodes) +
                    stub_length(env.entity(ti).center, goal, variant);
      for (const GridNode& p : path.nodes) grid.block(p);
    }
    result.paths.push_back(std::move(path));
  }
  return result;
}

bool grid_paths_conflict(const std::vector<GridNode>& a, const std::vector<GridNode>& b) {
  for (const GridNode& p : a) {
    if (std::find(b.begin(), b.end(), p) != b.end()) return true;
  }
  auto diagonals = [](const std::vector<GridNode>& path) {
    std::vector<std::pair<GridNode, GridNode>> out;
    for (std::size_t i = 1; i < path.size(); ++i) {
      const GridNode& u = path[i - 1];
      const GridNode& v = path[i];
      if (u.x != v.x && u.y != v.y) out.emplace_back(std::min(u, v), std::max(u, v));
    }
    return out;
  };
  for (const auto& [u, v] : diagonals(a)) {
    // The crossing diagonal of the same unit square.
    const GridNode p{u.x, v.y};
    const GridNode q{v.x, u.y};
    for (const auto& [s, t] : diagonals(b)) {
      if ((s == std::min(p, q) && t == std::max(p, q))) return true;
    }
  }
  return false;
}

}  // namespace cframe
