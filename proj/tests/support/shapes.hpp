#pragma once

#include <vector>

#include "typotex/geometry.hpp"

namespace shapes {

/// Axis-aligned rectangle as straight cubic edges, clockwise on screen.
inline typotex::Contour rect(double x0, double y0, double x1, double y1) {
  using typotex::CubicSegment;
  return typotex::Contour({CubicSegment::line({x0, y0}, {x1, y0}), CubicSegment::line({x1, y0}, {x1, y1}),
                           CubicSegment::line({x1, y1}, {x0, y1}), CubicSegment::line({x0, y1}, {x0, y0})});
}

inline constexpr double kCircleK = 0.5519150244935105707435627;

/// Four-arc cubic circle approximation.
inline typotex::Contour circle(double cx, double cy, double r) {
  const double k = kCircleK * r;
  return typotex::Contour({
      {{cx + r, cy}, {cx + r, cy + k}, {cx + k, cy + r}, {cx, cy + r}},
      {{cx, cy + r}, {cx - k, cy + r}, {cx - r, cy + k}, {cx - r, cy}},
      {{cx - r, cy}, {cx - r, cy - k}, {cx - k, cy - r}, {cx, cy - r}},
      {{cx, cy - r}, {cx + k, cy - r}, {cx + r, cy - k}, {cx + r, cy}},
  });
}

inline typotex::CubicSegment quarter_circle() {
  return {{1, 0}, {1, 0.5519150244}, {0.5519150244, 1}, {0, 1}};
}

}  // namespace shapes
