#include <doctest.h>

#include "cframe/environment.hpp"

using namespace cframe;

TEST_CASE("benchmark start positions") {
  const auto p = benchmark_start_positions(4);
  REQUIRE(p.size() == 4);
  CHECK(p[0] == PlanePoint{50, 4});
  CHECK(p[1] == PlanePoint{50, -4});
  CHECK(p[2] == PlanePoint{50, 12});
  CHECK(p[3] == PlanePoint{50, -12});
}

TEST_CASE("generated environments respect the separation rules") {
  for (int n : {2, 4, 6, 8, 10}) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const Environment env = generate_environment(n, seed);
      CHECK_NOTHROW(validate_environment(env));
      REQUIRE(env.net_count() == n);
      for (int i = 0; i < n; ++i) {
        const EntityDisk& t = env.ends[i];
        CHECK(env.boundary.edge_distance(t.center) >= 3.0 - 1e-12);
        for (int j = 0; j < n; ++j) {
          CHECK(distance(t.center, env.starts[j].center) >= 11.0 - 1e-12);
          if (j != i) CHECK(distance(t.center, env.ends[j].center) >= 11.0 - 1e-12);
        }
        CHECK(env.nets[i].start_id == "s" + std::to_string(i + 1));
        CHECK(env.nets[i].end_id == "t" + std::to_string(i + 1));
      }
    }
  }
}

TEST_CASE("generation is deterministic per seed") {
  CHECK(generate_environment(6, 42) == generate_environment(6, 42));
  CHECK_FALSE(generate_environment(6, 42) == generate_environment(6, 43));
}

TEST_CASE("entity indexing") {
  const Environment env = generate_environment(2, 1);
  CHECK(env.entity_index("s1") == 0);
  CHECK(env.entity_index("s2") == 1);
  CHECK(env.entity_index("t1") == 2);
  CHECK(env.entity(3).id == "t2");
  CHECK_THROWS_AS(env.entity_index("x9"), EnvironmentError);
  CHECK_THROWS_AS(env.entity(4), EnvironmentError);
}

TEST_CASE("validation rejects broken environments") {
  Environment env = generate_environment(2, 1);
  SUBCASE("unknown net endpoint") {
    env.nets[0].end_id = "t7";
    CHECK_THROWS_AS(validate_environment(env), EnvironmentError);
  }
  SUBCASE("entity outside the boundary") {
    env.ends[0].center = {80, 0};
    CHECK_THROWS_AS(validate_environment(env), EnvironmentError);
  }
  SUBCASE("non-positive radius") {
    env.starts[1].radius = 0;
    CHECK_THROWS_AS(validate_environment(env), EnvironmentError);
  }
  CHECK_THROWS_AS(generate_environment(0, 1), EnvironmentError);
}
