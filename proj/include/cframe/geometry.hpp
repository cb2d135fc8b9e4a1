#pragma once

#include <cmath>
#include <numbers>

namespace cframe {

struct PlanePoint {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const PlanePoint&, const PlanePoint&) = default;
  PlanePoint operator+(const PlanePoint& o) const { return {x + o.x, y + o.y}; }
  PlanePoint operator-(const PlanePoint& o) const { return {x - o.x, y - o.y}; }
  PlanePoint operator*(double s) const { return {x * s, y * s}; }
};

inline double dot(const PlanePoint& a, const PlanePoint& b) { return a.x * b.x + a.y * b.y; }
inline double cross(const PlanePoint& a, const PlanePoint& b) { return a.x * b.y - a.y * b.x; }
inline double norm(const PlanePoint& a) { return std::sqrt(a.x * a.x + a.y * a.y); }
inline double distance(const PlanePoint& a, const PlanePoint& b) { return norm(a - b); }
inline double angle_of(const PlanePoint& a) { return std::atan2(a.y, a.x); }
inline PlanePoint left_normal(const PlanePoint& u) { return {-u.y, u.x}; }
inline PlanePoint unit(const PlanePoint& u) {
  const double n = norm(u);
  return {u.x / n, u.y / n};
}

/// Orientation of the triple: > 0 counter-clockwise, < 0 clockwise.
inline double orient(const PlanePoint& a, const PlanePoint& b, const PlanePoint& c) {
  return cross(b - a, c - a);
}

/// Angle in [0, 2pi).
inline double normalize_angle(double a) {
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  a = std::fmod(a, kTwoPi);
  if (a < 0.0) a += kTwoPi;
  if (a >= kTwoPi) a -= kTwoPi;
  return a;
}

struct RectBoundary {
  double x_min = -50.0;
  double x_max = 50.0;
  double y_min = -50.0;
  double y_max = 50.0;

  bool valid() const { return x_min < x_max && y_min < y_max; }
  bool contains(const PlanePoint& p, double tol = 1e-9) const {
    return p.x >= x_min - tol && p.x <= x_max + tol && p.y >= y_min - tol && p.y <= y_max + tol;
  }
  bool on_boundary(const PlanePoint& p, double tol = 1e-9) const;
  /// Smallest distance from p to any of the four boundary edges.
  double edge_distance(const PlanePoint& p) const;
  /// Position along the counter-clockwise boundary walk starting at (x_min, y_min).
  double ccw_parameter(const PlanePoint& p) const;
  double perimeter() const { return 2.0 * ((x_max - x_min) + (y_max - y_min)); }

  friend bool operator==(const RectBoundary&, const RectBoundary&) = default;
};

double manhattan_distance(const PlanePoint& a, const PlanePoint& b);

/// True iff the closed segments p1p2 and p3p4 share a point other than an
/// endpoint they both declare. Collinear overlap counts.
bool segments_properly_interact(const PlanePoint& p1, const PlanePoint& p2, const PlanePoint& p3,
                                const PlanePoint& p4);

double point_segment_distance(const PlanePoint& p, const PlanePoint& a, const PlanePoint& b);

/// Closest-point parameter of p on segment ab, clamped to [0, 1].
double segment_parameter(const PlanePoint& p, const PlanePoint& a, const PlanePoint& b);

}  // namespace cframe
