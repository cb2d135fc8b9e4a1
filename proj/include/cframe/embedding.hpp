#pragma once

#include <stdexcept>
#include <vector>

#include "cframe/environment.hpp"
#include "cframe/forest.hpp"
#include "cframe/routed_frame.hpp"
#include "cframe/router.hpp"
#include "cframe/triangulation.hpp"

namespace cframe {

class SketchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SketchConfig {
  double delta_h = 0.5;      // spacing between nested arcs
  double base_radius = 0.5;  // entity radius
};

struct SketchSegment {
  PlanePoint from;
  PlanePoint to;
};

/// Arc around a pivot, swept from start_angle by span (>= 0) in the
/// direction given by orientation (+1 anti-clockwise, -1 clockwise).
struct SketchArc {
  int pivot = -1;  // entity index
  PlanePoint center;
  double radius = 0.0;
  double start_angle = 0.0;
  double span = 0.0;
  int orientation = 1;

  double end_angle() const { return start_angle + orientation * span; }
  PlanePoint point_at(double angle) const;
  PlanePoint start_point() const { return point_at(start_angle); }
  PlanePoint end_point() const { return point_at(end_angle()); }
  /// Unit direction of travel at the given angle.
  PlanePoint tangent_at(double angle) const;
};

/// segments[k] ends where arcs[k] begins and arcs[k] ends where
/// segments[k + 1] begins.
struct SketchPath {
  int net = 0;
  std::vector<SketchSegment> segments;
  std::vector<SketchArc> arcs;
};

/// Tangent segments chained around circles of radius base + h * delta_h at
/// each interior pivot, wrapping each pivot on the side given by its
/// orientation. Endpoints are the start and end centres.
SketchPath sketch_path(const TopologicalClass& cls, const Environment& env,
                       const SketchConfig& cfg = {});
std::vector<SketchPath> sketch_all(const std::vector<TopologicalClass>& classes,
                                   const Environment& env, const SketchConfig& cfg = {});

double path_length(const SketchPath& p);

/// Largest angle between a segment direction and the arc tangent at any junction.
double tangency_residual(const SketchPath& p);

/// Polyline through the path with arcs subdivided to the given chord error.
std::vector<PlanePoint> sample_path(const SketchPath& p, double chord_error = 0.05);

/// Pairs (i, j), i < j, of paths whose sampled polylines intersect.
std::vector<std::pair<int, int>> sampled_crossings(const std::vector<SketchPath>& paths,
                                                   double chord_error = 0.05);

/// Taut classes of all routed nets together with their sketches.
struct Embedding {
  std::vector<TopologicalClass> classes;
  std::vector<SketchPath> paths;
  int rounds = 0;
};

/// Pull every routed net tight in its homotopy class, order paths that wrap
/// a common pivot, and grow the arcs until no two sketches cross. Throws
/// SketchError when no crossing-free sketch is found.
Embedding embed(const RoutedFrame& rf, const Forest& forest, const Environment& env,
                const SketchConfig& cfg = {});
Embedding embed(const RoutedFrame& rf, const Forest& forest, const Environment& env,
                const Triangulation& tr, const SketchConfig& cfg = {});

}  // namespace cframe
