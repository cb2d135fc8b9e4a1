#pragma once

#include <optional>
#include <string>

#include "cframe/embedding.hpp"
#include "cframe/environment.hpp"
#include "cframe/forest.hpp"
#include "cframe/frame.hpp"
#include "cframe/routed_frame.hpp"
#include "cframe/router.hpp"
#include "cframe/triangulation.hpp"

namespace cframe {

/// Everything the Circular Frame router produces for one environment.
struct CfRun {
  Forest forest;
  Triangulation triangulation;
  std::optional<RoutedFrame> routed;
  Embedding embedding;
  bool completed = false;
  std::string error;  // set when a stage threw
};

/// Forest, cut, route and sketch. Failures of any stage are caught and
/// reported through `completed` and `error`.
CfRun route_env_cf(const Environment& env, const RoutingStrategy& strategy = {},
                   const SketchConfig& cfg = {});

}  // namespace cframe
