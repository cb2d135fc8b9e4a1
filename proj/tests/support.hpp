#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "cframe/environment.hpp"
#include "cframe/forest.hpp"
#include "cframe/frame.hpp"
#include "cframe/routed_frame.hpp"

namespace cframe::testing {

inline Environment make_environment(const std::vector<PlanePoint>& starts,
                                    const std::vector<PlanePoint>& ends) {
  Environment env;
  for (std::size_t i = 0; i < starts.size(); ++i) {
    const std::string k = std::to_string(i + 1);
    env.starts.push_back({"s" + k, EntityKind::kStart, starts[i], 0.5});
    env.ends.push_back({"t" + k, EntityKind::kEnd, ends[i], 0.5});
    env.nets.push_back({static_cast<int>(i) + 1, "s" + k, "t" + k});
  }
  validate_environment(env);
  return env;
}

/// Four boundary starts, four interior ends. Nets 1 to 3 connect inside one
/// slice; net 4 tunnels through edges 3 and 4 around t3 and t2.
inline Environment fig14_environment() {
  return make_environment({{50, -12}, {50, -28}, {50, -4}, {50, 28}},
                          {{37, -14}, {-21, -14}, {-10, 29}, {20, -34}});
}

/// t2 hangs off t1 as a leaf; t1 is anchored to the top edge.
inline Environment fig18_environment() {
  return make_environment({{50, -20}, {50, -30}}, {{0, 30}, {0, 16}});
}

/// Two nets passing through the leaf tunnel of fig18_environment, nested so
/// that the slice between the tunnel sides is shared. Chords go from the
/// vertex before side A to side A and from side B to the vertex after it.
struct Fig18 {
  RoutedFrame rf;
  int a = -1;  // ring index of r1
  int b = -1;  // ring index of r1'
};

inline Fig18 fig18_fixture() {
  const Environment env = fig18_environment();
  const Forest forest = build_forest(env);
  Frame frame = cut(env, forest);
  int leaf = -1;
  for (const ForestEdge& e : forest.edges) {
    if (!forest.is_anchor(e.a) && tree_degree(forest, e.b) == 1) leaf = e.id;
  }
  Fig18 f{RoutedFrame(std::move(frame))};
  f.a = f.rf.frame().tunnel_vertex(leaf, Side::kA);
  f.b = f.rf.frame().tunnel_vertex(leaf, Side::kB);
  const int m = f.rf.frame().size();
  const int p = (f.a + m - 1) % m;
  const int q = (f.b + 1) % m;
  f.rf.insert_chords(1, {{{p, 0}, {f.a, 0}}, {{f.b, 0}, {q, 0}}});
  f.rf.insert_chords(2, {{{p, 1}, {f.a, 0}}, {{f.b, 1}, {q, 0}}});
  return f;
}

/// Random environment with starts on the right edge in shuffled order and
/// ends drawn on an integer lattice with the benchmark separations. With
/// boundary_ends, each end lands on the top, left or bottom edge with
/// probability one half.
inline Environment random_small_environment(int n, std::mt19937_64& rng,
                                            bool boundary_ends = false) {
  std::vector<double> ys{-36, -28, -20, -12, -4, 4, 12, 20, 28, 36};
  std::shuffle(ys.begin(), ys.end(), rng);
  std::uniform_int_distribution<int> coord(-40, 40);
  std::vector<PlanePoint> starts, ends;
  for (int i = 0; i < n; ++i) starts.push_back({50, ys[i]});
  while (static_cast<int>(ends.size()) < n) {
    PlanePoint p{static_cast<double>(coord(rng)), static_cast<double>(coord(rng))};
    if (boundary_ends && rng() % 2 == 0) {
      switch (rng() % 3) {
        case 0: p.y = 50; break;
        case 1: p.x = -50; break;
        default: p.y = -50; break;
      }
    }
    bool ok = 50 - p.x >= 11;
    for (const PlanePoint& q : ends) ok = ok && norm(p - q) >= 11;
    for (const PlanePoint& q : starts) ok = ok && norm(p - q) >= 11;
    if (ok) ends.push_back(p);
  }
  return make_environment(starts, ends);
}

}  // namespace cframe::testing
