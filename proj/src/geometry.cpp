#include "cframe/geometry.hpp"

#include <algorithm>

namespace cframe {

namespace {

constexpr double kEps = 1e-12;

int sign_of(double v) {
  if (v > kEps) return 1;
  if (v < -kEps) return -1;
  return 0;
}

// p collinear with ab: does it lie within the closed segment?
bool on_segment(const PlanePoint& a, const PlanePoint& b, const PlanePoint& p) {
  return std::min(a.x, b.x) - kEps <= p.x && p.x <= std::max(a.x, b.x) + kEps &&
         std::min(a.y, b.y) - kEps <= p.y && p.y <= std::max(a.y, b.y) + kEps;
}

bool closed_segments_intersect(const PlanePoint& p1, const PlanePoint& p2, const PlanePoint& p3,
                               const PlanePoint& p4) {
  const int d1 = sign_of(orient(p3, p4, p1));
  const int d2 = sign_of(orient(p3, p4, p2));
  const int d3 = sign_of(orient(p1, p2, p3));
  const int d4 = sign_of(orient(p1, p2, p4));
  if (d1 * d2 < 0 && d3 * d4 < 0) return true;
  if (d1 == 0 && on_segment(p3, p4, p1)) return true;
  if (d2 == 0 && on_segment(p3, p4, p2)) return true;
  if (d3 == 0 && on_segment(p1, p2, p3)) return true;
  if (d4 == 0 && on_segment(p1, p2, p4)) return true;
  return false;
}

}  // namespace

bool RectBoundary::on_boundary(const PlanePoint& p, double tol) const {
  if (!contains(p, tol)) return false;
  return std::abs(p.x - x_min) <= tol || std::abs(p.x - x_max) <= tol ||
         std::abs(p.y - y_min) <= tol || std::abs(p.y - y_max) <= tol;
}

double RectBoundary::edge_distance(const PlanePoint& p) const {
  return std::min({p.x - x_min, x_max - p.x, p.y - y_min, y_max - p.y});
}

double RectBoundary::ccw_parameter(const PlanePoint& p) const {
  const double w = x_max - x_min;
  const double h = y_max - y_min;
  constexpr double tol = 1e-9;
  if (std::abs(p.y - y_min) <= tol && p.x < x_max - tol) return p.x - x_min;
  if (std::abs(p.x - x_max) <= tol && p.y < y_max - tol) return w + (p.y - y_min);
  if (std::abs(p.y - y_max) <= tol && p.x > x_min + tol) return w + h + (x_max - p.x);
  return 2.0 * w + h + (y_max - p.y);
}

double manhattan_distance(const PlanePoint& a, const PlanePoint& b) {
  return std::abs(a.x - b.x) + std::abs(a.y - b.y);
}

bool segments_properly_interact(const PlanePoint& p1, const PlanePoint& p2, const PlanePoint& p3,
                                const PlanePoint& p4) {
  PlanePoint shared;
  PlanePoint other_a;
  PlanePoint other_b;
  int shared_count = 0;
  if (p1 == p3) { shared = p1; other_a = p2; other_b = p4; ++shared_count; }
  if (p1 == p4) { shared = p1; other_a = p2; other_b = p3; ++shared_count; }
  if (p2 == p3) { shared = p2; other_a = p1; other_b = p4; ++shared_count; }
  if (p2 == p4) { shared = p2; other_a = p1; other_b = p3; ++shared_count; }

  if (shared_count >= 2) return true;  // identical segments overlap
  if (shared_count == 1) {
    // Only a collinear overlap leaving the shared endpoint in the same direction
    // produces a second common point.
    const PlanePoint u = other_a - shared;
    const PlanePoint v = other_b - shared;
    return sign_of(cross(u, v)) == 0 && dot(u, v) > 0.0;
  }
  return closed_segments_intersect(p1, p2, p3, p4);
}

double segment_parameter(const PlanePoint& p, const PlanePoint& a, const PlanePoint& b) {
  const PlanePoint ab = b - a;
  const double len2 = dot(ab, ab);
  if (len2 <= 0.0) return 0.0;
  return std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
}

double point_segment_distance(const PlanePoint& p, const PlanePoint& a, const PlanePoint& b) {
  const double t = segment_parameter(p, a, b);
  return distance(p, a + (b - a) * t);
}

}  // namespace cframe
