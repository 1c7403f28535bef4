#pragma once

#include <vector>

#include "typotex/geometry.hpp"
#include "typotex/image.hpp"

namespace typotex {

enum class FillRule { nonzero, evenodd };

inline constexpr double kDefaultFlattenTolerance = 0.25;

struct RasterOptions {
  /// Maximum distance, in pixels, between a curve and its polyline.
  double flatten_tolerance = kDefaultFlattenTolerance;
  /// Horizontal sample lines per pixel row. Coverage along each line is
  /// exact; a power of two keeps interior sums exact.
  int subsamples = 16;
};

/// Coverage mask of the filled region. Pixel (x, y) spans [x, x+1) x
/// [y, y+1) in contour coordinates. Empty input gives an all-zero mask.
AlphaMask rasterize(const std::vector<Contour>& contours, int width, int height,
                    FillRule fill_rule = FillRule::nonzero, const RasterOptions& options = {});

/// Polyline approximation of `seg` from p0 to p3 inclusive at uniform
/// parameter steps; endpoints are copied exactly and the curve stays within
/// `tol` of the polyline.
std::vector<Point2> flatten(const CubicSegment& seg, double tol = kDefaultFlattenTolerance);

/// alpha / 255 per pixel. Images without an alpha channel are fully opaque.
AlphaMask mask_from_alpha(const RasterImage& image);

}  // namespace typotex
