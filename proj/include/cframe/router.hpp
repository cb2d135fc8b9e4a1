#pragma once

#include <stdexcept>
#include <vector>

#include "cframe/environment.hpp"
#include "cframe/forest.hpp"
#include "cframe/routed_frame.hpp"
#include "cframe/triangulation.hpp"

namespace cframe {

class RoutingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class CopySelection { kFirstListed, kNearestRingDistance };
enum class TunnelSelection { kPaperGreedy, kBfsMinTunnels, kShortestPlanar };
enum class NetOrder { kGiven, kByIndex };

struct RoutingStrategy {
  CopySelection copy_selection = CopySelection::kNearestRingDistance;
  TunnelSelection tunnel_selection = TunnelSelection::kShortestPlanar;
  NetOrder net_order = NetOrder::kGiven;
};

/// Plane geometry needed by the shortest-planar tunnel selection.
struct RouteGeometry {
  const Forest* forest = nullptr;
  const Triangulation* triangulation = nullptr;
};

/// Pivot / orientation / height encoding of one routed path. pivots hold
/// entity indices; first is the start, last the end.
struct TopologicalClass {
  int net = 0;
  std::vector<int> pivots;
  std::vector<int> orientations;  // +1 anti-clockwise, -1 clockwise, 0 at endpoints
  std::vector<int> heights;

  friend bool operator==(const TopologicalClass&, const TopologicalClass&) = default;
};

/// Connect one net inside the frame. Start and end copies are joined by one
/// chord when they share a slice, otherwise by a chain of chords tunnelling
/// through tree-point pairs with matching slice orders.
void route_net(RoutedFrame& rf, const Environment& env, const Net& net,
               const RoutingStrategy& strategy = {}, const RouteGeometry* geo = nullptr);

RoutedFrame route_all(const Frame& frame, const Environment& env, const std::vector<Net>& nets,
                      const RoutingStrategy& strategy = {}, const RouteGeometry* geo = nullptr);

/// Tunnel crossings of a routed net in path order.
struct TunnelCrossing {
  int edge_id = 0;
  Side entry_side = Side::kA;  // side whose tree point the incoming chord ends at
  int entry_vertex = -1;
  int exit_vertex = -1;
};
std::vector<TunnelCrossing> tunnel_crossings(const RoutedFrame& rf, int net);

/// Class read off the frame: one pivot per tunnel crossing (the deeper end of
/// the crossed tree edge), +1 for side A -> side B crossings, heights from the
/// chord-end stacks counted from the deeper end.
TopologicalClass extract_topological_class(const RoutedFrame& rf, const Forest& forest,
                                           const Environment& env, const Net& net);

}  // namespace cframe
