#pragma once

#include <vector>

#include "cframe/environment.hpp"

namespace cframe {

enum class GridVariant { kAs1, kAs2 };

struct GridNode {
  int x = 0;
  int y = 0;

  friend auto operator<=>(const GridNode&, const GridNode&) = default;
};

double heuristic_as1(const GridNode& p, const GridNode& t);
/// Chebyshev distance, max(dx, dy).
double heuristic_as2(const GridNode& p, const GridNode& t);

struct GridPath {
  int net = 0;
  bool routed = false;
  std::vector<GridNode> nodes;
  /// Grid steps plus the stubs joining the entity centres to their snapped
  /// nodes, each in the variant's step metric.
  double length = 0.0;
};

struct GridRouteResult {
  std::vector<GridPath> paths;  // one per net, in net order
  bool completed = false;
};

struct GridParams {
  double block_radius = 0.5;
};

/// Integer lattice over the boundary with a growing set of blocked nodes.
class Grid {
 public:
  explicit Grid(const RectBoundary& boundary);

  int width() const { return width_; }
  int height() const { return height_; }
  bool inside(const GridNode& p) const;
  int index(const GridNode& p) const { return (p.y - y0_) * width_ + (p.x - x0_); }
  GridNode node(int index) const { return {x0_ + index % width_, y0_ + index / width_}; }
  GridNode snap(const PlanePoint& p) const;

  bool blocked(const GridNode& p) const { return blocked_[index(p)] != 0; }
  void block(const GridNode& p) { blocked_[index(p)] = 1; }
  void unblock(const GridNode& p) { blocked_[index(p)] = 0; }

 private:
  int x0_ = 0;
  int y0_ = 0;
  int width_ = 0;
  int height_ = 0;
  std::vector<char> blocked_;
};

/// Grid nodes covered by an entity disk: all nodes within `radius` of the
/// centre plus the snapped centre.
std::vector<GridNode> disk_nodes(const Grid& grid, const PlanePoint& center, double radius);

/// Single A* search on the grid. Returns an empty vector when the open set
/// runs dry. Start and goal must be unblocked.
std::vector<GridNode> astar_search(const Grid& grid, GridNode start, GridNode goal,
                                   GridVariant variant);

double grid_path_length(const std::vector<GridNode>& nodes);

/// Routes the nets one after the other in index order; every routed path
/// blocks its nodes for the nets that follow.
GridRouteResult route_env_astar(const Environment& env, GridVariant variant,
                                const GridParams& params = {});

/// True when two grid paths share a node or cross on a pair of diagonals.
bool grid_paths_conflict(const std::vector<GridNode>& a, const std::vector<GridNode>& b);

}  // namespace cframe
