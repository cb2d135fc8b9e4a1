#include "cframe/pipeline.hpp"

#include <exception>

namespace cframe {

CfRun route_env_cf(const Environment& env, const RoutingStrategy& strategy,
                   const SketchConfig& cfg) {
  CfRun run;
  try {
    run.forest = build_forest(env);
    run.triangulation = triangulate(env, run.forest);
    const RouteGeometry geo{&run.forest, &run.triangulation};
    run.routed.emplace(route_all(cut(env, run.forest), env, env.nets, strategy, &geo));
    run.embedding = embed(*run.routed, run.forest, env, run.triangulation, cfg);
    run.completed = true;
  } catch (const std::exception& e) {
    run.error = e.what();
  }
  return run;
}

}  // namespace cframe
