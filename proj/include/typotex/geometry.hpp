#pragma once

#include <array>
#include <cmath>
#include <utility>
#include <vector>

namespace typotex {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Point2 operator*(double k, Point2 p) { return {k * p.x, k * p.y}; }
  friend constexpr bool operator==(Point2 a, Point2 b) = default;

  bool finite() const { return std::isfinite(x) && std::isfinite(y); }
};

inline double distance(Point2 a, Point2 b) { return std::hypot(b.x - a.x, b.y - a.y); }

inline constexpr Point2 lerp(Point2 a, Point2 b, double t) {
  return {a.x + (b.x - a.x) * t, a.y + (b.y - a.y) * t};
}

/// Closure tolerance between consecutive segment endpoints, in canvas units.
inline constexpr double kClosureTolerance = 1e-9;

/// Default relative tolerance for arc-length estimation.
inline constexpr double kDefaultArcLengthTolerance = 1e-6;

struct CubicSegment {
  Point2 p0;
  Point2 c1;
  Point2 c2;
  Point2 p3;

  friend constexpr bool operator==(const CubicSegment&, const CubicSegment&) = default;

  Point2 evaluate(double t) const;

  /// De Casteljau split at `t`; the halves share the split point exactly.
  std::pair<CubicSegment, CubicSegment> split(double t) const;

  /// The piece of this curve between parameters `t0 <= t1`.
  CubicSegment sub_segment(double t0, double t1) const;

  /// All four points coincide.
  bool zero_length() const { return p0 == c1 && c1 == c2 && c2 == p3; }

  bool finite() const { return p0.finite() && c1.finite() && c2.finite() && p3.finite(); }

  /// Straight segment with control points at the thirds, so the
  /// parameterization is uniform along the line.
  static CubicSegment line(Point2 a, Point2 b) {
    return {a, lerp(a, b, 1.0 / 3.0), lerp(a, b, 2.0 / 3.0), b};
  }
};

struct QuadraticSegment {
  Point2 p0;
  Point2 q;
  Point2 p2;

  Point2 evaluate(double t) const;
};

/// A closed loop of cubic segments.
class Contour {
 public:
  Contour() = default;
  explicit Contour(std::vector<CubicSegment> segments) : segments_(std::move(segments)) {}

  const std::vector<CubicSegment>& segments() const { return segments_; }
  std::size_t size() const { return segments_.size(); }
  bool empty() const { return segments_.empty(); }

  /// Non-empty, finite, and every segment starts where the previous one
  /// ended (wrapping around) within kClosureTolerance.
  bool is_closed() const;

  Contour translated(Point2 offset) const;
  Contour scaled(double sx, double sy) const;

 private:
  std::vector<CubicSegment> segments_;
};

struct BoundingBox {
  Point2 min{0.0, 0.0};
  Point2 max{0.0, 0.0};

  double width() const { return max.x - min.x; }
  double height() const { return max.y - min.y; }
  bool contains(Point2 p) const {
    return p.x >= min.x && p.x <= max.x && p.y >= min.y && p.y <= max.y;
  }
};

/// Control-point bounding box of a set of contours; all zeros when empty.
BoundingBox control_bounds(const std::vector<Contour>& contours);

struct GlyphOutline {
  std::vector<Contour> contours;
  double units_per_em = 1.0;
  BoundingBox bounding_box;
  /// Horizontal advance in the same units as the contours.
  double advance = 0.0;

  bool empty() const { return contours.empty(); }
};

/// Exact degree elevation of a quadratic Bézier.
CubicSegment normalize_to_cubics(const QuadraticSegment& quad);

/// Arc length of `seg` by adaptive de Casteljau bisection. Recursion stops
/// once the control-polygon length exceeds the chord length by at most
/// `rel_tol` times the chord.
double arc_length(const CubicSegment& seg, double rel_tol = kDefaultArcLengthTolerance);

/// Splits every segment whose arc length exceeds `max_segment_length` into
/// the fewest equal-length pieces that satisfy the bound. Geometry is
/// untouched; only the parameterization gains control points.
GlyphOutline subdivide_by_arc_length(const GlyphOutline& outline, double max_segment_length,
                                     double rel_tol = kDefaultArcLengthTolerance);

std::vector<CubicSegment> subdivide_segment(const CubicSegment& seg, double max_segment_length,
                                            double rel_tol = kDefaultArcLengthTolerance);

}  // namespace typotex
