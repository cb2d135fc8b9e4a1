#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "cframe/json_io.hpp"
#include "cframe/pipeline.hpp"

using namespace cframe;

TEST_CASE("environment round trip") {
  const Environment env = generate_environment(6, 17);
  const Environment back = env_from_json(Json::parse(env_to_json(env).dump()));
  CHECK(back == env);
}

TEST_CASE("malformed environments are rejected") {
  Json j = env_to_json(generate_environment(2, 1));
  SUBCASE("missing key") {
    j.erase("nets");
    CHECK_THROWS(env_from_json(j));
  }
  SUBCASE("bad point") {
    j["ends"][0]["center"] = Json::array({1});
    CHECK_THROWS_AS(env_from_json(j), JsonFormatError);
  }
  SUBCASE("unknown entity") {
    j["nets"][0]["end"] = "t9";
    CHECK_THROWS_AS(env_from_json(j), EnvironmentError);
  }
}

TEST_CASE("config defaults and overrides") {
  const ExperimentConfig d = config_from_json(Json::object());
  CHECK(d.environments == 100);
  CHECK(d.n_values == std::vector<int>{2, 4, 6, 8, 10});
  const ExperimentConfig c = config_from_json(
      Json::parse(R"({"n_values":[4],"environments":5,"algorithms":["cf"],"delta_h":0.25})"));
  CHECK(c.n_values == std::vector<int>{4});
  CHECK(c.environments == 5);
  CHECK(c.algorithms == std::vector<Algo>{Algo::kCf});
  CHECK(c.sketch.delta_h == 0.25);
  const ExperimentConfig r = config_from_json(config_to_json(c));
  CHECK(r.n_values == c.n_values);
  CHECK(r.algorithms == c.algorithms);
  CHECK_THROWS_AS(config_from_json(Json::parse(R"({"algorithms":["x"]})")), JsonFormatError);
  CHECK_THROWS_AS(config_from_json(Json::parse(R"({"environments":"many"})")), JsonFormatError);
  CHECK_THROWS_AS(config_from_json(Json::parse(R"({"n_values":[5]})")), JsonFormatError);
}

TEST_CASE("route results round trip") {
  const Environment env = generate_environment(6, 5);
  const CfRun run = route_env_cf(env);
  REQUIRE(run.completed);
  const RouteResult cf = cf_result(run, 1.5);
  const RouteResult cf2 = result_from_json(env, Json::parse(result_to_json(env, cf).dump()));
  CHECK(cf2.algo == Algo::kCf);
  CHECK(cf2.completed);
  CHECK(cf2.classes == cf.classes);
  REQUIRE(cf2.sketches.size() == cf.sketches.size());
  for (std::size_t i = 0; i < cf.sketches.size(); ++i) {
    CHECK(path_length(cf2.sketches[i]) == doctest::Approx(path_length(cf.sketches[i])).epsilon(1e-12));
  }
  const GridRouteResult grid = route_env_astar(env, GridVariant::kAs2);
  const RouteResult as = grid_result(Algo::kAs2, grid, 2.0);
  const RouteResult as2 = result_from_json(env, result_to_json(env, as));
  CHECK(as2.completed == grid.completed);
  REQUIRE(as2.grid.paths.size() == grid.paths.size());
  for (std::size_t i = 0; i < grid.paths.size(); ++i) {
    CHECK(as2.grid.paths[i].nodes == grid.paths[i].nodes);
    CHECK(as2.grid.paths[i].length == grid.paths[i].length);
  }
}

TEST_CASE("files") {
  const auto path = (std::filesystem::temp_directory_path() / "cframe_json_test.json").string();
  write_json_file(path, Json{{"a", 1}});
  CHECK(read_json_file(path).at("a") == 1);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(read_json_file(path), JsonFormatError);
}

TEST_CASE("report json") {
  ExperimentConfig cfg;
  cfg.n_values = {2};
  cfg.environments = 3;
  cfg.renders_per_n = 0;
  const MetricsReport rep = run_experiment(cfg);
  const Json j = report_to_json(cfg, rep);
  REQUIRE(j.at("per_n").size() == 1);
  const Json& e = j["per_n"][0];
  CHECK(e.at("n") == 2);
  CHECK(e.at("N") == 3);
  CHECK(e.at("cf").at("completed") == 3);
  CHECK(e.at("cf").at("r").at("mean").is_number());
}
