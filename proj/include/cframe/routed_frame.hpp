#pragma once

#include <optional>
#include <vector>

#include "cframe/frame.hpp"

namespace cframe {

/// A chord end located by ring vertex and its rank in that vertex's stack of
/// chord ends. Rank 0 is the end nearest the preceding ring vertex.
struct ChordEndpoint {
  int vertex = -1;
  int rank = -1;

  friend auto operator<=>(const ChordEndpoint&, const ChordEndpoint&) = default;
};

struct Chord {
  int id = -1;   // creation order
  int net = 0;   // net index
  int from_vertex = -1;
  int to_vertex = -1;
};

/// A gap between consecutive chord ends at a ring vertex. A vertex with k
/// chord ends has gaps 0..k; gap j lies between ends j-1 and j.
struct SubGap {
  int vertex = -1;
  int gap = 0;

  friend auto operator<=>(const SubGap&, const SubGap&) = default;
};

/// One face of the chord arrangement inside the circle.
struct Slice {
  int id = -1;
  /// Boundary walk in ring (counter-clockwise) direction; consecutive gaps are
  /// joined either by a ring arc or by the chord named in `via_chord`.
  std::vector<SubGap> walk;
  std::vector<int> via_chord;  // via_chord[i]: chord taken after walk[i], or -1

  bool touches(int vertex) const;
  std::optional<SubGap> gap_at(int vertex) const;
};

/// The path of one routed net through the frame: chords[i] joins
/// vertices[2i] to vertices[2i + 1]; vertices[2i + 1] and vertices[2i + 2] are
/// the two sides of one tunnel.
struct NetRoute {
  int net = 0;
  std::vector<int> vertices;
  std::vector<int> chords;
};

class RoutedFrame {
 public:
  explicit RoutedFrame(Frame frame);

  const Frame& frame() const { return frame_; }
  const std::vector<Chord>& chords() const { return chords_; }
  const std::vector<NetRoute>& routes() const { return routes_; }
  const NetRoute* route_of(int net) const;

  int end_count(int vertex) const { return static_cast<int>(stacks_[vertex].size()); }
  const std::vector<int>& stack(int vertex) const { return stacks_[vertex]; }
  /// Rank of the chord's end at vertex; throws FrameError if absent.
  int rank(int chord, int vertex) const;
  ChordEndpoint from_end(int chord) const;
  ChordEndpoint to_end(int chord) const;

  /// Insert chords simultaneously; gap indices refer to the arrangement
  /// before the call. Each chord's ends must be at different vertices and no
  /// two ends may share a gap. Returns the new chord ids.
  std::vector<int> insert_chords(int net, const std::vector<std::pair<SubGap, SubGap>>& ends);
  void record_route(NetRoute route) { routes_.push_back(std::move(route)); }

 private:
  Frame frame_;
  std::vector<Chord> chords_;
  std::vector<std::vector<int>> stacks_;
  std::vector<NetRoute> routes_;
};

/// Faces of the current chord arrangement plus a gap -> face lookup.
class SliceMap {
 public:
  explicit SliceMap(const RoutedFrame& rf);

  const std::vector<Slice>& slices() const { return slices_; }
  int face(const SubGap& g) const { return face_of_[offset_[g.vertex] + g.gap]; }
  int face(int vertex, int gap) const { return face({vertex, gap}); }

 private:
  std::vector<Slice> slices_;
  std::vector<int> offset_;
  std::vector<int> face_of_;
};

/// Faces of the chord arrangement; throws FrameError if chords cross.
std::vector<Slice> slices(const RoutedFrame& rf);

/// 1-based order of `slice` around the tree point `vertex`: counted from the
/// ring for side A and in the mirrored sense for side B, so a slice at side A
/// and a slice at side B glue together exactly when their orders agree.
int slice_order(const RoutedFrame& rf, const Slice& slice, int vertex);
int slice_order_at_gap(const RoutedFrame& rf, const SubGap& gap);

/// Interleaving test on the refined cyclic order of chord ends.
bool chords_cross(const RoutedFrame& rf, int c1, int c2);
bool endpoints_interleave(ChordEndpoint a1, ChordEndpoint a2, ChordEndpoint b1, ChordEndpoint b2);

/// True when no two chords of rf cross.
bool non_crossing(const RoutedFrame& rf);

}  // namespace cframe
