#include "cframe/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <map>
#include <set>
#include <tuple>

#include "cframe/sleeve.hpp"
#include "cframe/triangulation.hpp"

namespace cframe {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kSlipSpan = 1.5 * kPi;
}  // namespace

PlanePoint SketchArc::point_at(double angle) const {
  return center + PlanePoint{std::cos(angle), std::sin(angle)} * radius;
}

PlanePoint SketchArc::tangent_at(double angle) const {
  return left_normal(PlanePoint{std::cos(angle), std::sin(angle)}) * static_cast<double>(orientation);
}

SketchPath sketch_path(const TopologicalClass& cls, const Environment& env, const SketchConfig& cfg) {
  const std::size_t m = cls.pivots.size();
  if (m < 2 || cls.orientations.size() != m || cls.heights.size() != m) {
    throw SketchError("malformed topological class for net " + std::to_string(cls.net));
  }
  if (cfg.delta_h <= 0.0) throw SketchError("height interval must be positive");
  std::vector<PlanePoint> c(m);
  std::vector<double> r(m, 0.0);
  std::vector<int> w(m, 0);
  for (std::size_t k = 0; k < m; ++k) {
    c[k] = env.entity(cls.pivots[k]).center;
    if (k == 0 || k + 1 == m) continue;
    if (cls.orientations[k] != 1 && cls.orientations[k] != -1) {
      throw SketchError("pivot orientation must be +1 or -1");
    }
    if (cls.heights[k] < 1) throw SketchError("pivot height must be at least 1");
    w[k] = cls.orientations[k];
    r[k] = cfg.base_radius + cls.heights[k] * cfg.delta_h;
  }

  SketchPath path;
  path.net = cls.net;
  for (std::size_t k = 0; k + 1 < m; ++k) {
    const PlanePoint d = c[k + 1] - c[k];
    const double off = w[k + 1] * r[k + 1] - w[k] * r[k];
    const double l2 = dot(d, d) - off * off;
    if (l2 <= 1e-18) {
      throw SketchError("no tangent between pivots " + env.entity(cls.pivots[k]).id + " and " +
                        env.entity(cls.pivots[k + 1]).id);
    }
    const double l = std::sqrt(l2);
    const double den = l2 + off * off;
    const PlanePoint u{(d.x * l + d.y * off) / den, (d.y * l - d.x * off) / den};
    path.segments.push_back(
        {c[k] - left_normal(u) * (w[k] * r[k]), c[k + 1] - left_normal(u) * (w[k + 1] * r[k + 1])});
  }
  for (std::size_t k = 1; k + 1 < m; ++k) {
    SketchArc a;
    a.pivot = cls.pivots[k];
    a.center = c[k];
    a.radius = r[k];
    a.orientation = w[k];
    a.start_angle = angle_of(path.segments[k - 1].to - c[k]);
    const double end = angle_of(path.segments[k].from - c[k]);
    a.span = normalize_angle(w[k] * (end - a.start_angle));
    path.arcs.push_back(a);
  }
  return path;
}

std::vector<SketchPath> sketch_all(const std::vector<TopologicalClass>& classes,
                                   const Environment& env, const SketchConfig& cfg) {
  std::vector<SketchPath> out;
  out.reserve(classes.size());
  for (const auto& c : classes) out.push_back(sketch_path(c, env, cfg));
  return out;
}

double path_length(const SketchPath& p) {
  double len = 0.0;
  for (const auto& s : p.segments) len += distance(s.from, s.to);
  for (const auto& a : p.arcs) len += a.radius * a.span;
  return len;
}

double tangency_residual(const SketchPath& p) {
  double worst = 0.0;
  auto angle_between = [](const PlanePoint& a, const PlanePoint& b) {
    return std::abs(std::atan2(cross(a, b), dot(a, b)));
  };
  for (std::size_t k = 0; k < p.arcs.size(); ++k) {
    const SketchArc& a = p.arcs[k];
    const PlanePoint in = unit(p.segments[k].to - p.segments[k].from);
    const PlanePoint out = unit(p.segments[k + 1].to - p.segments[k + 1].from);
    worst = std::max(worst, angle_between(in, a.tangent_at(a.start_angle)));
    worst = std::max(worst, angle_between(out, a.tangent_at(a.end_angle())));
  }
  return worst;
}

std::vector<PlanePoint> sample_path(const SketchPath& p, double chord_error) {
  std::vector<PlanePoint> pts;
  if (p.segments.empty()) return pts;
  for (std::size_t k = 0; k < p.segments.size(); ++k) {
    pts.push_back(p.segments[k].from);
    pts.push_back(p.segments[k].to);
    if (k >= p.arcs.size()) continue;
    const SketchArc& a = p.arcs[k];
    // Sagitta r (1 - cos(step / 2)) <= chord_error.
    const double ratio = std::clamp(1.0 - chord_error / a.radius, -1.0, 1.0);
    const double max_step = std::max(2.0 * std::acos(ratio), 1e-3);
    const int steps = std::max(1, static_cast<int>(std::ceil(a.span / max_step)));
    for (int s = 1; s < steps; ++s) {
      pts.push_back(a.point_at(a.start_angle + a.orientation * a.span * s / steps));
    }
  }
  return pts;
}

std::vector<std::pair<int, int>> sampled_crossings(const std::vector<SketchPath>& paths,
                                                   double chord_error) {
  struct Box {
    double x0, y0, x1, y1;
  };
  auto box_of = [](const PlanePoint& a, const PlanePoint& b) {
    return Box{std::min(a.x, b.x), std::min(a.y, b.y), std::max(a.x, b.x), std::max(a.y, b.y)};
  };
  std::vector<std::vector<PlanePoint>> lines;
  for (const auto& p : paths) lines.push_back(sample_path(p, chord_error));
  std::vector<std::pair<int, int>> out;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      bool hit = false;
      for (std::size_t a = 0; !hit && a + 1 < lines[i].size(); ++a) {
        const Box ba = box_of(lines[i][a], lines[i][a + 1]);
        for (std::size_t b = 0; b + 1 < lines[j].size(); ++b) {
          const Box bb = box_of(lines[j][b], lines[j][b + 1]);
          if (ba.x1 < bb.x0 || bb.x1 < ba.x0 || ba.y1 < bb.y0 || bb.y1 < ba.y0) continue;
          if (segments_properly_interact(lines[i][a], lines[i][a + 1], lines[j][b], lines[j][b + 1])) {
            hit = true;
            break;
          }
        }
      }
      if (hit) out.emplace_back(static_cast<int>(i), static_cast<int>(j));
    }
  }
  return out;
}

namespace {

struct Occurrence {
  int vertex = -1;
  int orientation = 0;
  int lo = -1;  // run of sleeve triangles around the vertex, inclusive
  int hi = -1;
  double clearance = 0.0;  // distance to the pivot before it was wrapped
  int id = -1;
};

struct NetState {
  const Net* net = nullptr;
  Sleeve sleeve;
  Sleeve reversed;
  std::vector<Occurrence> occ;
  std::vector<int> heights;
};

// Piece k of a path: segments are even (2k), arcs odd (2k + 1).
struct Crossing {
  int path_a, piece_a, path_b, piece_b;
  PlanePoint at;
};

bool on_arc(const SketchArc& a, double angle) {
  return normalize_angle(a.orientation * (angle - a.start_angle)) <= a.span + 1e-12;
}

bool segment_arc_hit(const SketchSegment& s, const SketchArc& a, PlanePoint& at) {
  const PlanePoint d = s.to - s.from;
  const PlanePoint f = s.from - a.center;
  const double qa = dot(d, d);
  const double qb = 2.0 * dot(f, d);
  const double qc = dot(f, f) - a.radius * a.radius;
  const double disc = qb * qb - 4.0 * qa * qc;
  if (disc < 0.0 || qa == 0.0) return false;
  const double sq = std::sqrt(disc);
  for (double t : {(-qb - sq) / (2.0 * qa), (-qb + sq) / (2.0 * qa)}) {
    if (t < 0.0 || t > 1.0) continue;
    const PlanePoint p = s.from + d * t;
    if (on_arc(a, angle_of(p - a.center))) {
      at = p;
      return true;
    }
  }
  return false;
}

bool arc_arc_hit(const SketchArc& a, const SketchArc& b, PlanePoint& at) {
  const PlanePoint d = b.center - a.center;
  const double dist = norm(d);
  if (dist < 1e-12) {
    if (std::abs(a.radius - b.radius) > 1e-9) return false;
    for (const SketchArc* x : {&a, &b}) {
      const SketchArc* y = x == &a ? &b : &a;
      for (double ang : {x->start_angle, x->end_angle()}) {
        if (on_arc(*y, ang)) {
          at = x->point_at(ang);
          return true;
        }
      }
    }
    return false;
  }
  if (dist > a.radius + b.radius || dist < std::abs(a.radius - b.radius)) return false;
  const double along = (dist * dist + a.radius * a.radius - b.radius * b.radius) / (2.0 * dist);
  const double h = std::sqrt(std::max(0.0, a.radius * a.radius - along * along));
  const PlanePoint u = d * (1.0 / dist);
  const PlanePoint base = a.center + u * along;
  for (double sgn : {1.0, -1.0}) {
    const PlanePoint p = base + left_normal(u) * (sgn * h);
    if (on_arc(a, angle_of(p - a.center)) && on_arc(b, angle_of(p - b.center))) {
      at = p;
      return true;
    }
  }
  return false;
}

bool segment_segment_hit(const SketchSegment& s, const SketchSegment& t, PlanePoint& at) {
  if (!segments_properly_interact(s.from, s.to, t.from, t.to)) return false;
  const PlanePoint r = s.to - s.from;
  const PlanePoint q = t.to - t.from;
  const double den = cross(r, q);
  const double u = std::abs(den) < 1e-18 ? 0.0 : cross(t.from - s.from, q) / den;
  at = s.from + r * std::clamp(u, 0.0, 1.0);
  return true;
}

struct Box {
  double x0, y0, x1, y1;
  bool meets(const Box& o) const { return x0 <= o.x1 && o.x0 <= x1 && y0 <= o.y1 && o.y0 <= y1; }
};

Box box_of(const SketchSegment& s) {
  return {std::min(s.from.x, s.to.x), std::min(s.from.y, s.to.y), std::max(s.from.x, s.to.x),
          std::max(s.from.y, s.to.y)};
}

Box box_of(const SketchArc& a) {
  return {a.center.x - a.radius, a.center.y - a.radius, a.center.x + a.radius,
          a.center.y + a.radius};
}

std::vector<Crossing> find_crossings(const std::vector<SketchPath>& paths) {
  std::vector<Crossing> out;
  std::vector<std::vector<Box>> boxes(paths.size());  // per piece
  std::vector<Box> whole(paths.size());
  for (std::size_t i = 0; i < paths.size(); ++i) {
    const SketchPath& p = paths[i];
    for (std::size_t k = 0; k < p.segments.size(); ++k) {
      boxes[i].push_back(box_of(p.segments[k]));
      if (k < p.arcs.size()) boxes[i].push_back(box_of(p.arcs[k]));
    }
    whole[i] = boxes[i].empty() ? Box{0, 0, -1, -1} : boxes[i].front();
    for (const Box& b : boxes[i]) {
      whole[i] = {std::min(whole[i].x0, b.x0), std::min(whole[i].y0, b.y0),
                  std::max(whole[i].x1, b.x1), std::max(whole[i].y1, b.y1)};
    }
  }
  for (std::size_t i = 0; i < paths.size(); ++i) {
    for (std::size_t j = i + 1; j < paths.size(); ++j) {
      if (!whole[i].meets(whole[j])) continue;
      const SketchPath& a = paths[i];
      const SketchPath& b = paths[j];
      PlanePoint at;
      for (std::size_t x = 0; x < boxes[i].size(); ++x) {
        for (std::size_t y = 0; y < boxes[j].size(); ++y) {
          if (!boxes[i][x].meets(boxes[j][y])) continue;
          bool hit = false;
          if (x % 2 == 0 && y % 2 == 0) {
            hit = segment_segment_hit(a.segments[x / 2], b.segments[y / 2], at);
          } else if (x % 2 == 0) {
            hit = segment_arc_hit(a.segments[x / 2], b.arcs[y / 2], at);
          } else if (y % 2 == 0) {
            hit = segment_arc_hit(b.segments[y / 2], a.arcs[x / 2], at);
          } else {
            hit = arc_arc_hit(a.arcs[x / 2], b.arcs[y / 2], at);
          }
          if (hit) out.push_back({int(i), int(x), int(j), int(y), at});
        }
      }
    }
  }
  return out;
}

class Embedder {
 public:
  Embedder(const RoutedFrame& rf, const Forest& forest, const Environment& env,
           const Triangulation& tr, const SketchConfig& cfg)
      : env_(env), cfg_(cfg), tr_(tr) {
    for (const NetRoute& r : rf.routes()) {
      const Net* net = nullptr;
      for (const Net& n : env.nets) {
        if (n.index == r.net) net = &n;
      }
      if (net == nullptr) throw SketchError("route for an unknown net");
      NetState st;
      st.net = net;
      st.sleeve = build_sleeve(tr_, forest, rf, env, *net);
      st.reversed = st.sleeve;
      std::swap(st.reversed.start_vertex, st.reversed.end_vertex);
      std::reverse(st.reversed.triangles.begin(), st.reversed.triangles.end());
      for (const Bend& b : funnel(tr_, st.sleeve)) {
        if (b.vertex >= env.entity_count() || b.portal <= 0 || b.portal >= st.sleeve.size()) continue;
        Occurrence o;
        o.id = next_id_++;
        o.vertex = b.vertex;
        o.orientation = b.orientation;
        set_run(st.sleeve, o, b.portal - 1, b.portal);
        st.occ.push_back(o);
      }
      nets_.push_back(std::move(st));
    }
  }

  Embedding run() {
    Embedding out;
    constexpr int kMaxRounds = 64;
    for (int round = 0; round < kMaxRounds; ++round) {
      out.rounds = round + 1;
      assign_heights();
      out.classes.clear();
      for (const NetState& st : nets_) out.classes.push_back(class_of(st));
      out.paths = sketch_all(out.classes, env_, cfg_);
      if (remove_slipped(out.paths)) continue;
      const auto crossings = find_crossings(out.paths);
      if (crossings.empty()) return out;
      bool changed = false;
      std::vector<bool> touched(nets_.size(), false);
      for (const Crossing& c : crossings) {
        // Prefer wrapping an entity the other piece is anchored at.
        std::vector<std::tuple<double, int, int, int>> options;  // distance, path, piece, entity
        const std::pair<int, int> sides[2] = {{c.path_a, c.piece_a}, {c.path_b, c.piece_b}};
        const double local = std::max(adjacent_radius(out.paths[c.path_a], c.piece_a),
                                      adjacent_radius(out.paths[c.path_b], c.piece_b)) +
                             cfg_.delta_h;
        for (int s = 0; s < 2; ++s) {
          const auto [n, piece] = sides[s];
          const auto own = anchors(out.classes[n], piece);
          for (int e : anchors(out.classes[sides[1 - s].first], sides[1 - s].second)) {
            if (std::find(own.begin(), own.end(), e) != own.end()) continue;
            const double d = piece_distance(out.paths[n], piece, env_.entity(e).center);
            if (d < std::max(local, reach(out.paths, e))) options.emplace_back(d, n, piece, e);
          }
        }
        std::sort(options.begin(), options.end());
        bool added = false;
        for (const auto& [d, n, piece, e] : options) {
          if (touched[n]) continue;
          if (add_near(n, out.paths[n], piece, e)) {
            touched[n] = added = true;
            break;
          }
        }
        for (int s = 0; s < 2 && !added; ++s) {
          const auto [n, piece] = sides[s];
          if (touched[n]) continue;
          const int e = nearest_entity(c.at);
          if (piece_distance(out.paths[n], piece, env_.entity(e).center) >= reach(out.paths, e)) continue;
          touched[n] = add_near(n, out.paths[n], piece, e);
        }
        changed |= added || touched[c.path_a] || touched[c.path_b];
      }
      if (!changed) {
        const Crossing& c = crossings.front();
        throw SketchError("unresolved crossing between nets " +
                          std::to_string(nets_[c.path_a].net->index) + " and " +
                          std::to_string(nets_[c.path_b].net->index));
      }
    }
    throw SketchError("sketch relaxation did not settle");
  }

 private:
  void set_run(const Sleeve& s, Occurrence& o, int from, int to) {
    o.lo = from;
    o.hi = to;
    while (o.lo > 0 && tr_.has_vertex(s.triangles[o.lo - 1], o.vertex)) --o.lo;
    while (o.hi + 1 < s.size() && tr_.has_vertex(s.triangles[o.hi + 1], o.vertex)) ++o.hi;
  }

  TopologicalClass class_of(const NetState& st) const {
    TopologicalClass c;
    c.net = st.net->index;
    c.pivots.push_back(st.sleeve.start_vertex);
    c.orientations.push_back(0);
    c.heights.push_back(0);
    for (std::size_t k = 0; k < st.occ.size(); ++k) {
      c.pivots.push_back(st.occ[k].vertex);
      c.orientations.push_back(st.occ[k].orientation);
      c.heights.push_back(st.heights[k]);
    }
    c.pivots.push_back(st.sleeve.end_vertex);
    c.orientations.push_back(0);
    c.heights.push_back(0);
    return c;
  }

  // +1 if occurrence a must lie inside b, -1 for the reverse, 0 if unrelated.
  int nesting(int na, int ka, int nb, int kb) {
    const NetState& A = nets_[na];
    const NetState& B = nets_[nb];
    const Occurrence& a = A.occ[ka];
    const Occurrence& b = B.occ[kb];
    const auto key = std::make_pair(a.id, b.id);
    if (const auto it = nesting_.find(key); it != nesting_.end()) return it->second;
    return nesting_[key] = compute_nesting(A, a, B, b);
  }

  int compute_nesting(const NetState& A, const Occurrence& a, const NetState& B,
                      const Occurrence& b) const {
    if (a.lo >= 0 && b.lo >= 0) {
      // Opposite orientations go round the pivot in opposite senses; compare
      // against b travelled backwards.
      const bool flip = a.orientation != b.orientation;
      const Sleeve& sb = flip ? B.reversed : B.sleeve;
      int best = 0;
      int lat = 0;
      for (int i = a.lo; i <= a.hi; ++i) {
        for (int j = b.lo; j <= b.hi; ++j) {
          const int jj = flip ? sb.size() - 1 - j : j;
          if (A.sleeve.triangles[i] != sb.triangles[jj]) continue;
          const int len = shared_stretch(A.sleeve, i, sb, jj);
          if (len <= best) continue;
          const int r = lateral_order(tr_, A.sleeve, i, sb, jj);
          if (r == 0) continue;
          best = len;
          lat = r;
        }
      }
      if (lat != 0) return lat == -a.orientation ? +1 : -1;
    }
    if (a.clearance < b.clearance) return +1;
    if (b.clearance < a.clearance) return -1;
    return 0;
  }

  void assign_heights() {
    std::vector<std::tuple<int, int, int>> all;  // vertex, net, k
    for (std::size_t n = 0; n < nets_.size(); ++n) {
      nets_[n].heights.assign(nets_[n].occ.size(), 1);
      for (std::size_t k = 0; k < nets_[n].occ.size(); ++k) {
        const Occurrence& o = nets_[n].occ[k];
        all.emplace_back(o.vertex, int(n), int(k));
      }
    }
    std::sort(all.begin(), all.end());
    for (std::size_t g = 0; g < all.size();) {
      std::size_t e = g;
      while (e < all.size() && std::get<0>(all[e]) == std::get<0>(all[g])) ++e;
      const std::size_t m = e - g;
      std::vector<std::pair<int, int>> inside;  // (inner, outer) within the group
      for (std::size_t x = 0; x < m; ++x) {
        for (std::size_t y = x + 1; y < m; ++y) {
          const auto& [v1, n1, k1] = all[g + x];
          const auto& [v2, n2, k2] = all[g + y];
          const int r = nesting(n1, k1, n2, k2);
          if (r > 0) inside.emplace_back(int(x), int(y));
          if (r < 0) inside.emplace_back(int(y), int(x));
        }
      }
      std::vector<int> h(m, 1);
      for (std::size_t pass = 0; pass <= m; ++pass) {
        bool moved = false;
        for (const auto& [in, out] : inside) {
          if (h[out] < h[in] + 1) {
            h[out] = h[in] + 1;
            moved = true;
          }
        }
        if (!moved) break;
        if (pass == m) throw SketchError("inconsistent nesting around a pivot");
      }
      for (std::size_t x = 0; x < m; ++x) {
        const auto& [v, n, k] = all[g + x];
        nets_[n].heights[k] = h[x];
      }
      g = e;
    }
  }

  bool remove_slipped(const std::vector<SketchPath>& paths) {
    bool any = false;
    for (std::size_t n = 0; n < nets_.size(); ++n) {
      for (int k = static_cast<int>(paths[n].arcs.size()) - 1; k >= 0; --k) {
        if (paths[n].arcs[k].span <= kSlipSpan) continue;
        const Occurrence& o = nets_[n].occ[k];
        banned_.insert({int(n), o.vertex, o.orientation});
        nets_[n].occ.erase(nets_[n].occ.begin() + k);
        any = true;
      }
    }
    return any;
  }

  // Wrap the entity nearest to a crossing when the crossing piece passes it
  // without a pivot there.
  int nearest_entity(const PlanePoint& at) const {
    int e = 0;
    for (int v = 1; v < env_.entity_count(); ++v) {
      if (distance(env_.entity(v).center, at) < distance(env_.entity(e).center, at)) e = v;
    }
    return e;
  }

  // Distance within which a piece passing entity e can meet arcs around it.
  double reach(const std::vector<SketchPath>& paths, int e) const {
    double r = cfg_.base_radius;
    for (const auto& p : paths) {
      for (const auto& a : p.arcs) {
        if (a.pivot == e) r = std::max(r, a.radius);
      }
    }
    return r + cfg_.delta_h;
  }

  // Largest arc radius on or next to a piece.
  static double adjacent_radius(const SketchPath& p, int piece) {
    const int k = piece / 2;
    if (piece % 2 == 1) return p.arcs[k].radius;
    double r = 0.0;
    if (k > 0) r = std::max(r, p.arcs[k - 1].radius);
    if (k < static_cast<int>(p.arcs.size())) r = std::max(r, p.arcs[k].radius);
    return r;
  }

  static std::vector<int> anchors(const TopologicalClass& c, int piece) {
    const int k = piece / 2;
    if (piece % 2 == 0) return {c.pivots[k], c.pivots[k + 1]};
    return {c.pivots[k + 1]};
  }

  static double piece_distance(const SketchPath& p, int piece, const PlanePoint& q) {
    if (piece % 2 == 0) {
      const SketchSegment& s = p.segments[piece / 2];
      return point_segment_distance(q, s.from, s.to);
    }
    const SketchArc& a = p.arcs[piece / 2];
    if (distance(q, a.center) > 1e-12 && on_arc(a, angle_of(q - a.center))) {
      return std::abs(distance(q, a.center) - a.radius);
    }
    return std::min(distance(q, a.start_point()), distance(q, a.end_point()));
  }

  bool add_near(int n, const SketchPath& path, int piece, int e) {
    NetState& st = nets_[n];
    const int occ_count = static_cast<int>(st.occ.size());
    // Pivot list position j: 0 is the start, occ_count + 1 the end.
    auto pivot = [&](int j) {
      if (j <= 0) return st.sleeve.start_vertex;
      if (j > occ_count) return st.sleeve.end_vertex;
      return st.occ[j - 1].vertex;
    };
    const PlanePoint c = env_.entity(e).center;
    int slot = 0;
    int w = 0;
    double clearance = 0.0;
    if (piece % 2 == 0) {
      const int k = piece / 2;
      if (pivot(k) == e || pivot(k + 1) == e) return false;
      const SketchSegment& s = path.segments[k];
      w = orient(s.from, s.to, c) > 0 ? +1 : -1;
      clearance = point_segment_distance(c, s.from, s.to);
      slot = k;
    } else {
      const int k = piece / 2;
      const SketchArc& a = path.arcs[k];
      if (a.pivot == e) return false;
      const double ang = angle_of(c - a.center);
      const PlanePoint p = a.point_at(ang);
      w = cross(a.tangent_at(ang), c - p) > 0 ? +1 : -1;
      clearance = std::abs(distance(c, a.center) - a.radius);
      const double phase = normalize_angle(a.orientation * (ang - a.start_angle));
      slot = phase > 0.5 * a.span && phase <= a.span ? k + 1 : k;
      if (pivot(slot) == e || pivot(slot + 1) == e) return false;
    }
    if (banned_.count({n, e, w})) return false;
    Occurrence o;
    o.id = next_id_++;
    o.vertex = e;
    o.orientation = w;
    o.clearance = clearance + 1e-9;
    const int from = slot > 0 ? st.occ[slot - 1].hi : 0;
    const int to = slot < static_cast<int>(st.occ.size()) ? st.occ[slot].lo : st.sleeve.size() - 1;
    for (int i = std::max(0, from); i <= std::min(to, st.sleeve.size() - 1); ++i) {
      if (!tr_.has_vertex(st.sleeve.triangles[i], e)) continue;
      const int side = vertex_side(tr_, st.sleeve, i, e);
      if (side == 0) continue;
      o.orientation = side;
      set_run(st.sleeve, o, i, i);
      break;
    }
    if (banned_.count({n, e, o.orientation})) return false;
    st.occ.insert(st.occ.begin() + slot, o);
    return true;
  }

  const Environment& env_;
  SketchConfig cfg_;
  const Triangulation& tr_;
  std::vector<NetState> nets_;
  std::set<std::tuple<int, int, int>> banned_;
  std::map<std::pair<int, int>, int> nesting_;
  int next_id_ = 0;
};

}  // namespace

Embedding embed(const RoutedFrame& rf, const Forest& forest, const Environment& env,
                const Triangulation& tr, const SketchConfig& cfg) {
  // Tight spots are retried with thinner arcs.
  constexpr double kScales[] = {1.0, 0.5, 0.25, 0.1, 0.04, 0.01};
  for (double s : kScales) {
    SketchConfig c = cfg;
    c.delta_h *= s;
    c.base_radius *= s;
    try {
      return Embedder(rf, forest, env, tr, c).run();
    } catch (const SketchError&) {
      if (s == kScales[std::size(kScales) - 1]) throw;
    }
  }
  throw SketchError("unreachable");
}

Embedding embed(const RoutedFrame& rf, const Forest& forest, const Environment& env,
                const SketchConfig& cfg) {
  return embed(rf, forest, env, triangulate(env, forest), cfg);
}

}  // namespace cframe
