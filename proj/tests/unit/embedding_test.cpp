#include <doctest.h>

#include <cmath>

#include "cframe/embedding.hpp"
#include "cframe/pipeline.hpp"
#include "../support.hpp"

using namespace cframe;

TEST_CASE("single pivot sketch uses external tangents") {
  Environment env = testing::make_environment({{50, 0}}, {{-50, 0}});
  env.ends.push_back({"t2", EntityKind::kEnd, {0, 0}, 0.5});
  env.starts.push_back({"s2", EntityKind::kStart, {50, 30}, 0.5});
  env.nets.push_back({2, "s2", "t2"});
  validate_environment(env);
  TopologicalClass c;
  c.net = 1;
  c.pivots = {env.entity_index("s1"), env.entity_index("t2"), env.entity_index("t1")};
  c.orientations = {0, 1, 0};
  c.heights = {0, 1, 0};
  const SketchConfig cfg;
  const SketchPath p = sketch_path(c, env, cfg);
  REQUIRE(p.arcs.size() == 1);
  REQUIRE(p.segments.size() == 2);
  const double r = cfg.base_radius + cfg.delta_h;
  CHECK(p.arcs[0].radius == doctest::Approx(r));
  CHECK(tangency_residual(p) < 1e-9);
  // Closed form: tangent length sqrt(d^2 - r^2) on each side, plus the arc.
  const double d = 50.0;
  const double tangent = std::sqrt(d * d - r * r);
  const double span = std::numbers::pi - 2.0 * std::acos(r / d);
  CHECK(p.arcs[0].span == doctest::Approx(span).epsilon(1e-12));
  CHECK(path_length(p) == doctest::Approx(2 * tangent + r * span).epsilon(1e-12));
  // Heading west anti-clockwise around the pivot keeps the path above it.
  CHECK(p.arcs[0].point_at(p.arcs[0].start_angle + 0.5 * p.arcs[0].span).y > 0);
}

TEST_CASE("direct class is a straight segment") {
  const Environment env = testing::make_environment({{50, 0}}, {{0, 40}});
  TopologicalClass c{1, {0, 1}, {0, 0}, {0, 0}};
  const SketchPath p = sketch_path(c, env);
  CHECK(p.arcs.empty());
  CHECK(path_length(p) == doctest::Approx(distance({50, 0}, {0, 40})));
  const auto pts = sample_path(p);
  CHECK(pts.front() == PlanePoint{50, 0});
  CHECK(pts.back() == PlanePoint{0, 40});
}

TEST_CASE("embedded sketches are tangent and crossing free") {
  for (int n : {2, 4, 6, 8, 10}) {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
      const Environment env = generate_environment(n, seed);
      const CfRun run = route_env_cf(env);
      REQUIRE(run.completed);
      REQUIRE(run.embedding.paths.size() == static_cast<std::size_t>(n));
      double thinnest = 1.0;
      for (const SketchPath& p : run.embedding.paths) {
        CHECK(tangency_residual(p) < 1e-9);
        CHECK(p.segments.size() == p.arcs.size() + 1);
        for (const SketchArc& a : p.arcs) thinnest = std::min(thinnest, a.radius);
      }
      CHECK(sampled_crossings(run.embedding.paths, std::min(0.05, 0.01 * thinnest)).empty());
    }
  }
}

TEST_CASE("worked example sketch wraps t3 and t2 anti-clockwise") {
  const Environment env = testing::fig14_environment();
  const CfRun run = route_env_cf(env);
  REQUIRE(run.completed);
  REQUIRE(run.embedding.paths.size() == 4);
  CHECK(sampled_crossings(run.embedding.paths, 0.01).empty());
  const SketchPath& p4 = run.embedding.paths[3];
  REQUIRE(p4.arcs.size() == 2);
  CHECK(p4.arcs[0].pivot == env.entity_index("t3"));
  CHECK(p4.arcs[1].pivot == env.entity_index("t2"));
  CHECK(p4.arcs[0].orientation == 1);
  CHECK(p4.arcs[1].orientation == 1);
}

TEST_CASE("sampled crossings detect a real crossing") {
  SketchPath a, b;
  a.net = 1;
  a.segments = {{{0, 0}, {10, 10}}};
  b.net = 2;
  b.segments = {{{0, 10}, {10, 0}}};
  const auto c = sampled_crossings({a, b});
  REQUIRE(c.size() == 1);
  CHECK(c[0] == std::pair<int, int>{0, 1});
}
