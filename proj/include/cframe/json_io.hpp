#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "cframe/astar.hpp"
#include "cframe/bench.hpp"
#include "cframe/embedding.hpp"
#include "cframe/environment.hpp"
#include "cframe/pipeline.hpp"

namespace cframe {

using Json = nlohmann::json;

/// Parse and structure errors of the JSON readers.
class JsonFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Json env_to_json(const Environment& env);
/// Validates the result; throws JsonFormatError or EnvironmentError.
Environment env_from_json(const Json& j);

Json config_to_json(const ExperimentConfig& cfg);
/// Missing keys keep their defaults.
ExperimentConfig config_from_json(const Json& j);

Json report_to_json(const ExperimentConfig& cfg, const MetricsReport& report);

/// Routed paths of one algorithm on one environment, as stored by `route`.
struct RouteResult {
  Algo algo = Algo::kCf;
  bool completed = false;
  double time_ms = 0.0;
  std::string error;
  std::vector<TopologicalClass> classes;  // cf
  std::vector<SketchPath> sketches;       // cf
  GridRouteResult grid;                   // as1, as2
};

RouteResult cf_result(const CfRun& run, double time_ms);
RouteResult grid_result(Algo algo, const GridRouteResult& grid, double time_ms);

Json result_to_json(const Environment& env, const RouteResult& result);
RouteResult result_from_json(const Environment& env, const Json& j);

/// Reads a whole file and parses it; throws JsonFormatError with the path on failure.
Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

}  // namespace cframe
