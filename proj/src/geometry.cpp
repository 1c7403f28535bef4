#include "typotex/geometry.hpp"

#include <algorithm>
#include <limits>

namespace typotex {

Point2 CubicSegment::evaluate(double t) const {
  const double u = 1.0 - t;
  const double b0 = u * u * u;
  const double b1 = 3.0 * u * u * t;
  const double b2 = 3.0 * u * t * t;
  const double b3 = t * t * t;
  return {b0 * p0.x + b1 * c1.x + b2 * c2.x + b3 * p3.x,
          b0 * p0.y + b1 * c1.y + b2 * c2.y + b3 * p3.y};
}

std::pair<CubicSegment, CubicSegment> CubicSegment::split(double t) const {
  const Point2 ab = lerp(p0, c1, t);
  const Point2 bc = lerp(c1, c2, t);
  const Point2 cd = lerp(c2, p3, t);
  const Point2 abc = lerp(ab, bc, t);
  const Point2 bcd = lerp(bc, cd, t);
  const Point2 mid = lerp(abc, bcd, t);
  return {CubicSegment{p0, ab, abc, mid}, CubicSegment{mid, bcd, cd, p3}};
}

CubicSegment CubicSegment::sub_segment(double t0, double t1) const {
  if (t0 <= 0.0 && t1 >= 1.0) return *this;
  CubicSegment head = *this;
  if (t1 < 1.0) head = split(t1).first;
  if (t0 <= 0.0) return head;
  const double local = t1 > 0.0 ? t0 / t1 : 0.0;
  return head.split(local).second;
}

Point2 QuadraticSegment::evaluate(double t) const {
  const double u = 1.0 - t;
  return {u * u * p0.x + 2.0 * u * t * q.x + t * t * p2.x,
          u * u * p0.y + 2.0 * u * t * q.y + t * t * p2.y};
}

bool Contour::is_closed() const {
  if (segments_.empty()) return false;
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    const CubicSegment& seg = segments_[i];
    if (!seg.finite()) return false;
    const CubicSegment& next = segments_[(i + 1) % segments_.size()];
    if (distance(seg.p3, next.p0) > kClosureTolerance) return false;
  }
  return true;
}

Contour Contour::translated(Point2 offset) const {
  std::vector<CubicSegment> out = segments_;
  for (CubicSegment& s : out) {
    s.p0 = s.p0 + offset;
    s.c1 = s.c1 + offset;
    s.c2 = s.c2 + offset;
    s.p3 = s.p3 + offset;
  }
  return Contour(std::move(out));
}

Contour Contour::scaled(double sx, double sy) const {
  std::vector<CubicSegment> out = segments_;
  auto scale = [sx, sy](Point2 p) { return Point2{p.x * sx, p.y * sy}; };
  for (CubicSegment& s : out) {
    s.p0 = scale(s.p0);
    s.c1 = scale(s.c1);
    s.c2 = scale(s.c2);
    s.p3 = scale(s.p3);
  }
  return Contour(std::move(out));
}

BoundingBox control_bounds(const std::vector<Contour>& contours) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  BoundingBox box{{inf, inf}, {-inf, -inf}};
  bool any = false;
  for (const Contour& c : contours) {
    for (const CubicSegment& s : c.segments()) {
      for (Point2 p : {s.p0, s.c1, s.c2, s.p3}) {
        box.min.x = std::min(box.min.x, p.x);
        box.min.y = std::min(box.min.y, p.y);
        box.max.x = std::max(box.max.x, p.x);
        box.max.y = std::max(box.max.y, p.y);
        any = true;
      }
    }
  }
  return any ? box : BoundingBox{};
}

CubicSegment normalize_to_cubics(const QuadraticSegment& quad) {
  constexpr double k = 2.0 / 3.0;
  return {quad.p0, quad.p0 + k * (quad.q - quad.p0), quad.p2 + k * (quad.q - quad.p2), quad.p2};
}

namespace {

// Deep enough for any tolerance a double can resolve.
constexpr int kMaxArcDepth = 48;

double arc_length_recursive(const CubicSegment& seg, double rel_tol, int depth) {
  const double chord = distance(seg.p0, seg.p3);
  const double polygon = distance(seg.p0, seg.c1) + distance(seg.c1, seg.c2) + distance(seg.c2, seg.p3);
  if (polygon - chord <= rel_tol * chord || depth >= kMaxArcDepth) {
    return 0.5 * (chord + polygon);
  }
  const auto [left, right] = seg.split(0.5);
  return arc_length_recursive(left, rel_tol, depth + 1) + arc_length_recursive(right, rel_tol, depth + 1);
}

// Parameter t in [lo, 1] at which the arc length from 0 reaches `target`.
double parameter_at_length(const CubicSegment& seg, double target, double lo, double rel_tol) {
  double hi = 1.0;
  for (int i = 0; i < 60 && hi - lo > 1e-15; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (arc_length(seg.sub_segment(0.0, mid), rel_tol) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double arc_length(const CubicSegment& seg, double rel_tol) {
  if (seg.zero_length()) return 0.0;
  return arc_length_recursive(seg, rel_tol, 0);
}

std::vector<CubicSegment> subdivide_segment(const CubicSegment& seg, double max_segment_length,
                                            double rel_tol) {
  const double total = arc_length(seg, rel_tol);
  if (total <= max_segment_length) return {seg};

  const auto pieces = static_cast<std::size_t>(std::ceil(total / max_segment_length));
  std::vector<CubicSegment> out;
  out.reserve(pieces);
  double t_prev = 0.0;
  for (std::size_t k = 1; k <= pieces; ++k) {
    const double t = k == pieces
                         ? 1.0
                         : parameter_at_length(seg, total * static_cast<double>(k) / static_cast<double>(pieces),
                                               t_prev, rel_tol);
    CubicSegment piece = seg.sub_segment(t_prev, t);
    piece.p0 = out.empty() ? seg.p0 : out.back().p3;
    if (k == pieces) piece.p3 = seg.p3;
    out.push_back(piece);
    t_prev = t;
  }
  return out;
}

GlyphOutline subdivide_by_arc_length(const GlyphOutline& outline, double max_segment_length,
                                     double rel_tol) {
  GlyphOutline out = outline;
  out.contours.clear();
  for (const Contour& contour : outline.contours) {
    std::vector<CubicSegment> segments;
    for (const CubicSegment& seg : contour.segments()) {
      const std::vector<CubicSegment> pieces = subdivide_segment(seg, max_segment_length, rel_tol);
      segments.insert(segments.end(), pieces.begin(), pieces.end());
    }
    out.contours.emplace_back(std::move(segments));
  }
  out.bounding_box = control_bounds(out.contours);
  return out;
}

}  // namespace typotex
