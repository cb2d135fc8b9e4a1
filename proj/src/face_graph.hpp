#pragma once

#include <vector>

#include "cframe/routed_frame.hpp"
#include "cframe/router.hpp"

namespace cframe::detail {

/// Passage through a tunnel: leave the current slice at `here` and continue
/// from the order-matched gap `there` in slice `to_face`.
struct Link {
  SubGap here;
  SubGap there;
  int to_face = -1;
};

class FaceGraph {
 public:
  FaceGraph(const RoutedFrame& rf, const SliceMap& map);
  const std::vector<Link>& links(int face) const { return links_[face]; }
  /// Link leaving through the tree-point gap g.
  const Link* link_from(const SubGap& g) const { return by_gap_[offset_[g.vertex] + g.gap]; }

 private:
  std::vector<std::vector<Link>> links_;
  std::vector<int> offset_;
  std::vector<const Link*> by_gap_;
};

int ring_distance(int a, int b, int size);

struct PlanarPlan {
  int start = -1;  // start copy
  int end = -1;    // end copy
  std::vector<const Link*> hops;
  double length = 0.0;
};

/// Shortest route in the plane minus the entity points that the current
/// arrangement admits; start == -1 when none is found.
PlanarPlan plan_shortest(const RoutedFrame& rf, const FaceGraph& graph, const SliceMap& map,
                         const RouteGeometry& geo, const std::vector<int>& starts,
                         const std::vector<int>& ends, int start_entity, int end_entity);

}  // namespace cframe::detail
