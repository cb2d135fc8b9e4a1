#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "cframe/astar.hpp"

using namespace cframe;

TEST_CASE("heuristics") {
  CHECK(heuristic_as1({0, 0}, {3, -4}) == 7.0);
  CHECK(heuristic_as2({0, 0}, {3, -4}) == 4.0);
  CHECK(heuristic_as2({2, 2}, {2, 2}) == 0.0);
}

TEST_CASE("unobstructed searches are optimal") {
  const Grid grid(RectBoundary{});
  CHECK(grid.width() == 101);
  CHECK(grid.height() == 101);
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<int> c(-50, 50);
  for (int i = 0; i < 300; ++i) {
    const GridNode s{c(rng), c(rng)}, t{c(rng), c(rng)};
    const double dx = std::abs(s.x - t.x), dy = std::abs(s.y - t.y);
    const auto p1 = astar_search(grid, s, t, GridVariant::kAs1);
    const auto p2 = astar_search(grid, s, t, GridVariant::kAs2);
    CHECK(grid_path_length(p1) == doctest::Approx(dx + dy));
    CHECK(grid_path_length(p2) ==
          doctest::Approx(std::max(dx, dy) + (std::sqrt(2.0) - 1) * std::min(dx, dy)));
    CHECK(grid_path_length(p2) <= grid_path_length(p1) + 1e-12);
  }
}

TEST_CASE("walls force detours and enclosures fail") {
  Grid grid(RectBoundary{-5, 5, -5, 5});
  for (int y = -5; y <= 3; ++y) grid.block({0, y});
  const auto p = astar_search(grid, {-3, 0}, {3, 0}, GridVariant::kAs1);
  REQUIRE_FALSE(p.empty());
  for (const GridNode& q : p) CHECK_FALSE(grid.blocked(q));
  CHECK(grid_path_length(p) == doctest::Approx(6 + 2 * 4));
  for (int y = 4; y <= 5; ++y) grid.block({0, y});
  CHECK(astar_search(grid, {-3, 0}, {3, 0}, GridVariant::kAs2).empty());
}

TEST_CASE("diagonal moves do not squeeze between two blocked corners") {
  Grid grid(RectBoundary{-3, 3, -3, 3});
  grid.block({1, 0});
  grid.block({0, 1});
  const auto p = astar_search(grid, {0, 0}, {1, 1}, GridVariant::kAs2);
  REQUIRE(p.size() > 2);
  CHECK(grid_path_length(p) > std::sqrt(2.0));
}

TEST_CASE("routed nets block each other") {
  for (GridVariant v : {GridVariant::kAs1, GridVariant::kAs2}) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const Environment env = generate_environment(6, seed);
      const GridRouteResult r = route_env_astar(env, v);
      REQUIRE(r.paths.size() == 6);
      bool all = true;
      for (std::size_t i = 0; i < r.paths.size(); ++i) {
        CHECK(r.paths[i].net == static_cast<int>(i) + 1);
        all = all && r.paths[i].routed;
        for (std::size_t j = i + 1; j < r.paths.size(); ++j) {
          if (r.paths[i].routed && r.paths[j].routed) {
            CHECK_FALSE(grid_paths_conflict(r.paths[i].nodes, r.paths[j].nodes));
          }
        }
      }
      CHECK(all == r.completed);
    }
  }
}

TEST_CASE("path conflicts") {
  CHECK(grid_paths_conflict({{0, 0}, {1, 1}}, {{0, 1}, {1, 0}}));
  CHECK(grid_paths_conflict({{0, 0}, {1, 0}}, {{1, 0}, {2, 0}}));
  CHECK_FALSE(grid_paths_conflict({{0, 0}, {1, 0}}, {{0, 1}, {1, 1}}));
}

TEST_CASE("disk nodes cover the centre") {
  const Grid grid(RectBoundary{});
  const auto d = disk_nodes(grid, {10.3, -4.6}, 0.5);
  CHECK(std::find(d.begin(), d.end(), GridNode{10, -5}) != d.end());
  for (const GridNode& p : d) {
    CHECK(std::hypot(p.x - 10.3, p.y + 4.6) <= 0.75);
  }
}
