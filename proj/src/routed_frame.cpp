#include "cframe/routed_frame.hpp"

#include <algorithm>

namespace cframe {

bool Slice::touches(int vertex) const { return gap_at(vertex).has_value(); }

std::optional<SubGap> Slice::gap_at(int vertex) const {
  for (const SubGap& g : walk) {
    if (g.vertex == vertex) return g;
  }
  return std::nullopt;
}

RoutedFrame::RoutedFrame(Frame frame) : frame_(std::move(frame)), stacks_(frame_.size()) {}

const NetRoute* RoutedFrame::route_of(int net) const {
  for (const auto& r : routes_) {
    if (r.net == net) return &r;
  }
  return nullptr;
}

int RoutedFrame::rank(int chord, int vertex) const {
  const auto& s = stacks_.at(vertex);
  const auto it = std::find(s.begin(), s.end(), chord);
  if (it == s.end()) throw FrameError("chord has no end at this vertex");
  return static_cast<int>(it - s.begin());
}

ChordEndpoint RoutedFrame::from_end(int chord) const {
  const int v = chords_.at(chord).from_vertex;
  return {v, rank(chord, v)};
}

ChordEndpoint RoutedFrame::to_end(int chord) const {
  const int v = chords_.at(chord).to_vertex;
  return {v, rank(chord, v)};
}

std::vector<int> RoutedFrame::insert_chords(int net,
                                            const std::vector<std::pair<SubGap, SubGap>>& ends) {
  struct Pending {
    SubGap gap;
    int chord;
  };
  std::vector<Pending> pending;
  std::vector<int> ids;
  for (const auto& [a, b] : ends) {
    if (a.vertex == b.vertex) throw FrameError("chord ends must lie on different vertices");
    for (const SubGap& g : {a, b}) {
      if (g.vertex < 0 || g.vertex >= frame_.size() || g.gap < 0 || g.gap > end_count(g.vertex)) {
        throw FrameError("chord end outside the frame");
      }
    }
    const int id = static_cast<int>(chords_.size());
    chords_.push_back({id, net, a.vertex, b.vertex});
    pending.push_back({a, id});
    pending.push_back({b, id});
    ids.push_back(id);
  }
  // Insert from the back so gap indices stay valid.
  std::sort(pending.begin(), pending.end(),
            [](const Pending& l, const Pending& r) { return r.gap < l.gap; });
  for (std::size_t i = 0; i + 1 < pending.size(); ++i) {
    if (pending[i].gap == pending[i + 1].gap) throw FrameError("two chord ends share one gap");
  }
  for (const Pending& p : pending) {
    auto& s = stacks_[p.gap.vertex];
    s.insert(s.begin() + p.gap.gap, p.chord);
  }
  return ids;
}

SliceMap::SliceMap(const RoutedFrame& rf) {
  const int size = rf.frame().size();
  offset_.assign(size + 1, 0);
  for (int v = 0; v < size; ++v) offset_[v + 1] = offset_[v] + rf.end_count(v) + 1;
  face_of_.assign(offset_[size], -1);
  if (size == 0) {
    slices_.push_back({0, {}, {}});
    return;
  }
  const auto& chords = rf.chords();
  slices_.reserve(chords.size() + 1);
  std::vector<SubGap> walk;
  std::vector<int> via;
  for (int v = 0; v < size; ++v) {
    for (int j = 0; j <= rf.end_count(v); ++j) {
      if (face_of_[offset_[v] + j] >= 0) continue;
      const int id = static_cast<int>(slices_.size());
      walk.clear();
      via.clear();
      SubGap g{v, j};
      while (face_of_[offset_[g.vertex] + g.gap] < 0) {
        face_of_[offset_[g.vertex] + g.gap] = id;
        walk.push_back(g);
        if (g.gap < rf.end_count(g.vertex)) {
          const int c = rf.stack(g.vertex)[g.gap];
          const Chord& ch = chords[c];
          const int u = ch.from_vertex == g.vertex ? ch.to_vertex : ch.from_vertex;
          via.push_back(c);
          g = {u, rf.rank(c, u) + 1};
        } else {
          via.push_back(-1);
          g = {(g.vertex + 1) % size, 0};
        }
      }
      slices_.push_back({id, walk, via});
    }
  }
}

std::vector<Slice> slices(const RoutedFrame& rf) {
  if (!non_crossing(rf)) throw FrameError("slices requested for a crossing chord set");
  return SliceMap(rf).slices();
}

int slice_order_at_gap(const RoutedFrame& rf, const SubGap& gap) {
  const FrameVertex& v = rf.frame().ring.at(gap.vertex);
  if (!v.is_tree_point()) throw FrameError("slice order is defined at tree points only");
  const int k = rf.end_count(gap.vertex);
  return v.side == Side::kA ? 1 + gap.gap : 1 + (k - gap.gap);
}

int slice_order(const RoutedFrame& rf, const Slice& slice, int vertex) {
  const auto g = slice.gap_at(vertex);
  if (!g) throw FrameError("vertex is not on the slice boundary");
  return slice_order_at_gap(rf, *g);
}

bool endpoints_interleave(ChordEndpoint a1, ChordEndpoint a2, ChordEndpoint b1, ChordEndpoint b2) {
  if (a2 < a1) std::swap(a1, a2);
  const bool in1 = a1 < b1 && b1 < a2;
  const bool in2 = a1 < b2 && b2 < a2;
  const bool on1 = b1 == a1 || b1 == a2;
  const bool on2 = b2 == a1 || b2 == a2;
  if (on1 || on2) return false;
  return in1 != in2;
}

bool chords_cross(const RoutedFrame& rf, int c1, int c2) {
  if (c1 == c2) return false;
  return endpoints_interleave(rf.from_end(c1), rf.to_end(c1), rf.from_end(c2), rf.to_end(c2));
}

bool non_crossing(const RoutedFrame& rf) {
  const int n = static_cast<int>(rf.chords().size());
  std::vector<std::pair<ChordEndpoint, ChordEndpoint>> ends;
  ends.reserve(n);
  for (int c = 0; c < n; ++c) ends.emplace_back(rf.from_end(c), rf.to_end(c));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (endpoints_interleave(ends[i].first, ends[i].second, ends[j].first, ends[j].second)) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace cframe
