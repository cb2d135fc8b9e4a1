#include "cframe/svg.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "cframe/frame.hpp"

namespace cframe {

namespace {

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                                "#17becf", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22"};

const char* net_color(int net) { return kPalette[(net - 1 + 100) % 10]; }

class PlaneCanvas {
 public:
  PlaneCanvas(const RectBoundary& bd, const SvgStyle& style) : bd_(bd), style_(style) {
    out_ << std::fixed << std::setprecision(3);
    const double w = (bd.x_max - bd.x_min) * style.scale + 2 * style.margin;
    const double h = (bd.y_max - bd.y_min) * style.scale + 2 * style.margin;
    out_ << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
         << "\" viewBox=\"0 0 " << w << ' ' << h << "\">\n";
    out_ << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    const PlanePoint lo = map({bd.x_min, bd.y_max});
    out_ << "<rect x=\"" << lo.x << "\" y=\"" << lo.y << "\" width=\""
         << (bd.x_max - bd.x_min) * style.scale << "\" height=\""
         << (bd.y_max - bd.y_min) * style.scale
         << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
  }

  PlanePoint map(const PlanePoint& p) const {
    return {style_.margin + (p.x - bd_.x_min) * style_.scale,
            style_.margin + (bd_.y_max - p.y) * style_.scale};
  }
  double scale() const { return style_.scale; }

  void forest(const Forest& f) {
    out_ << "<g stroke=\"#888\" stroke-width=\"1\" stroke-dasharray=\"4 3\">\n";
    for (const auto& e : f.edges) {
      const PlanePoint a = map(f.position(e.a));
      const PlanePoint b = map(f.position(e.b));
      out_ << "<line x1=\"" << a.x << "\" y1=\"" << a.y << "\" x2=\"" << b.x << "\" y2=\"" << b.y
           << "\"/>\n";
    }
    out_ << "</g>\n";
  }

  void entities(const Environment& env) {
    for (int i = 0; i < env.entity_count(); ++i) {
      const EntityDisk& d = env.entity(i);
      const PlanePoint c = map(d.center);
      const bool start = d.kind == EntityKind::kStart;
      out_ << "<circle cx=\"" << c.x << "\" cy=\"" << c.y << "\" r=\"" << d.radius * scale()
           << "\" fill=\"" << (start ? "#f4a6a6" : "#a6c8f4") << "\" stroke=\"black\"/>\n";
      out_ << "<text x=\"" << c.x + 4 << "\" y=\"" << c.y - 4
           << "\" font-size=\"10\" font-family=\"sans-serif\">" << d.id << "</text>\n";
    }
  }

  std::ostringstream& raw() { return out_; }

  std::string finish() {
    out_ << "</svg>\n";
    return out_.str();
  }

 private:
  RectBoundary bd_;
  SvgStyle style_;
  std::ostringstream out_;
};

}  // namespace

std::string render_svg(const Environment& env, const Forest* forest,
                       const std::vector<SketchPath>& paths, const SvgStyle& style) {
  PlaneCanvas c(env.boundary, style);
  if (forest != nullptr) c.forest(*forest);
  for (const SketchPath& p : paths) {
    auto& o = c.raw();
    o << "<path fill=\"none\" stroke=\"" << net_color(p.net) << "\" stroke-width=\"1.5\" d=\"";
    const PlanePoint s = c.map(p.segments.front().from);
    o << "M " << s.x << ' ' << s.y;
    for (std::size_t k = 0; k < p.segments.size(); ++k) {
      const PlanePoint e = c.map(p.segments[k].to);
      o << " L " << e.x << ' ' << e.y;
      if (k < p.arcs.size()) {
        const SketchArc& a = p.arcs[k];
        // Split into pieces below pi so the SVG arc flags stay unambiguous.
        const int pieces = 1 + static_cast<int>(a.span / 3.0);
        for (int i = 1; i <= pieces; ++i) {
          const PlanePoint q = c.map(a.point_at(a.start_angle + a.orientation * a.span * i / pieces));
          const double r = a.radius * c.scale();
          // The plane y axis is flipped, so anti-clockwise turns into sweep 0.
          o << " A " << r << ' ' << r << " 0 0 " << (a.orientation > 0 ? 0 : 1) << ' ' << q.x << ' '
            << q.y;
        }
      }
    }
    o << "\"/>\n";
  }
  c.entities(env);
  return c.finish();
}

std::string render_svg(const Environment& env, const Forest* forest, const GridRouteResult& grid,
                       const SvgStyle& style) {
  PlaneCanvas c(env.boundary, style);
  if (forest != nullptr) c.forest(*forest);
  for (const GridPath& p : grid.paths) {
    if (!p.routed) continue;
    auto& o = c.raw();
    o << "<polyline fill=\"none\" stroke=\"" << net_color(p.net)
      << "\" stroke-width=\"1.5\" points=\"";
    for (const GridNode& n : p.nodes) {
      const PlanePoint q = c.map({static_cast<double>(n.x), static_cast<double>(n.y)});
      o << q.x << ',' << q.y << ' ';
    }
    o << "\"/>\n";
  }
  c.entities(env);
  return c.finish();
}

std::string render_frame_svg(const RoutedFrame& rf, const Environment& env, const SvgStyle& style) {
  const Frame& frame = rf.frame();
  const int size = frame.size();
  const double radius = 40.0 * style.scale;
  const double cx = radius + 4 * style.margin;
  const double cy = cx;
  std::ostringstream o;
  o << std::fixed << std::setprecision(3);
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << 2 * cx << "\" height=\"" << 2 * cy
    << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<circle cx=\"" << cx << "\" cy=\"" << cy << "\" r=\"" << radius
    << "\" fill=\"none\" stroke=\"black\"/>\n";
  // Chord ends spread inside the arc slot of their vertex, by rank.
  auto end_point = [&](int vertex, int rank) {
    const double slot = 2.0 * std::numbers::pi / std::max(size, 1);
    const int k = rf.end_count(vertex);
    const double a = (vertex - 0.5 + (rank + 1.0) / (k + 1.0)) * slot;
    return PlanePoint{cx + radius * std::cos(a), cy - radius * std::sin(a)};
  };
  for (const Chord& ch : rf.chords()) {
    const PlanePoint a = end_point(ch.from_vertex, rf.rank(ch.id, ch.from_vertex));
    const PlanePoint b = end_point(ch.to_vertex, rf.rank(ch.id, ch.to_vertex));
    o << "<line x1=\"" << a.x << "\" y1=\"" << a.y << "\" x2=\"" << b.x << "\" y2=\"" << b.y
      << "\" stroke=\"" << net_color(ch.net) << "\" stroke-width=\"1.5\"/>\n";
  }
  for (int v = 0; v < size; ++v) {
    const double a = v * 2.0 * std::numbers::pi / size;
    const PlanePoint p{cx + radius * std::cos(a), cy - radius * std::sin(a)};
    const PlanePoint l{cx + (radius + 18) * std::cos(a), cy - (radius + 18) * std::sin(a)};
    o << "<circle cx=\"" << p.x << "\" cy=\"" << p.y << "\" r=\"2.5\" fill=\"black\"/>\n";
    o << "<text x=\"" << l.x << "\" y=\"" << l.y
      << "\" font-size=\"10\" font-family=\"sans-serif\" text-anchor=\"middle\">"
      << vertex_label(env, frame.ring[v]) << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  f << text;
  if (!f) throw std::runtime_error("failed writing " + path);
}

}  // namespace cframe
