#include "typotex/raster.hpp"

#include <algorithm>
#include <cmath>

namespace typotex {
namespace {

constexpr double kMaxFlattenSteps = 1 << 16;

// Uniform parameter steps; the count bounds the chord error by tol from the
// largest second difference of the control polygon.
int flatten_steps(const CubicSegment& seg, double tol) {
  const Point2 d1 = seg.p0 - 2.0 * seg.c1 + seg.c2;
  const Point2 d2 = seg.c1 - 2.0 * seg.c2 + seg.p3;
  const double m = std::max(std::hypot(d1.x, d1.y), std::hypot(d2.x, d2.y));
  const double n = std::ceil(std::sqrt(0.75 * m / tol));
  return static_cast<int>(std::clamp(n, 1.0, kMaxFlattenSteps));
}

void flatten_into(const CubicSegment& seg, double tol, std::vector<Point2>& out) {
  const int n = flatten_steps(seg, tol);
  for (int i = 1; i < n; ++i) out.push_back(seg.evaluate(static_cast<double>(i) / n));
  out.push_back(seg.p3);
}

struct Edge {
  double y_top;
  double y_bottom;
  double x_at_top;
  double dxdy;
  int winding;
};

struct Crossing {
  double x;
  int winding;
};

// Edges are built relative to `origin`, an integer point, so that integer
// translations of the input give bit-identical local geometry.
std::vector<Edge> build_edges(const std::vector<Contour>& contours, Point2 origin, double tol) {
  std::vector<Edge> edges;
  std::vector<Point2> poly;
  for (const Contour& contour : contours) {
    if (contour.empty()) continue;
    const Contour local = contour.translated({-origin.x, -origin.y});
    poly.clear();
    poly.push_back(local.segments().front().p0);
    for (const CubicSegment& seg : local.segments()) flatten_into(seg, tol, poly);
    // Close explicitly; a no-op for contours that already end at their start.
    poly.push_back(poly.front());
    for (std::size_t i = 0; i + 1 < poly.size(); ++i) {
      Point2 a = poly[i];
      Point2 b = poly[i + 1];
      if (a.y == b.y) continue;
      int winding = 1;
      if (a.y > b.y) {
        std::swap(a, b);
        winding = -1;
      }
      edges.push_back({a.y, b.y, a.x, (b.x - a.x) / (b.y - a.y), winding});
    }
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& l, const Edge& r) { return l.y_top < r.y_top; });
  return edges;
}

// Adds `weight` times the overlap of [xa, xb) with each pixel of the row.
// xa and xb are relative to column `ox`.
void add_span(double xa, double xb, int ox, double weight, std::vector<double>& coverage,
              std::vector<double>& runs) {
  xa = std::max(xa, static_cast<double>(-ox));
  xb = std::min(xb, static_cast<double>(static_cast<int>(coverage.size()) - ox));
  if (xb <= xa) return;
  const double first_local = std::floor(xa);
  const double last_local = std::floor(xb);
  const auto first = static_cast<std::size_t>(static_cast<int>(first_local) + ox);
  const auto last = static_cast<std::size_t>(static_cast<int>(last_local) + ox);
  if (first == last) {
    coverage[first] += (xb - xa) * weight;
    return;
  }
  coverage[first] += (first_local + 1.0 - xa) * weight;
  runs[first + 1] += weight;
  runs[last] -= weight;
  if (last < coverage.size()) coverage[last] += (xb - last_local) * weight;
}

}  // namespace

std::vector<Point2> flatten(const CubicSegment& seg, double tol) {
  std::vector<Point2> out{seg.p0};
  flatten_into(seg, tol, out);
  return out;
}

AlphaMask rasterize(const std::vector<Contour>& contours, int width, int height, FillRule fill_rule,
                    const RasterOptions& options) {
  AlphaMask mask(width, height);
  if (width <= 0 || height <= 0) return mask;
  const BoundingBox box = control_bounds(contours);
  if (!box.min.finite()) return mask;
  // Far-off origins only move the shape out of the image; clamping keeps
  // the integer conversions in range.
  const double limit = 1 << 30;
  const Point2 origin{std::clamp(std::floor(box.min.x), -limit, limit),
                      std::clamp(std::floor(box.min.y), -limit, limit)};
  const int ox = static_cast<int>(origin.x);
  const int oy = static_cast<int>(origin.y);
  const std::vector<Edge> edges = build_edges(contours, origin, options.flatten_tolerance);
  if (edges.empty()) return mask;

  const int subsamples = std::max(1, options.subsamples);
  const double weight = 1.0 / subsamples;
  std::vector<double> coverage(static_cast<std::size_t>(width));
  std::vector<double> runs(static_cast<std::size_t>(width) + 1);
  std::vector<const Edge*> active;
  std::vector<Crossing> crossings;
  std::size_t next_edge = 0;

  for (int row = 0; row < height; ++row) {
    std::fill(coverage.begin(), coverage.end(), 0.0);
    std::fill(runs.begin(), runs.end(), 0.0);
    bool touched = false;
    for (int k = 0; k < subsamples; ++k) {
      const double sample_y = (row - oy) + (k + 0.5) * weight;
      while (next_edge < edges.size() && edges[next_edge].y_top <= sample_y) {
        active.push_back(&edges[next_edge++]);
      }
      std::erase_if(active, [sample_y](const Edge* e) { return e->y_bottom <= sample_y; });
      if (active.empty()) continue;

      crossings.clear();
      for (const Edge* e : active) {
        crossings.push_back({e->x_at_top + (sample_y - e->y_top) * e->dxdy, e->winding});
      }
      std::sort(crossings.begin(), crossings.end(),
                [](const Crossing& l, const Crossing& r) { return l.x < r.x; });

      int winding = 0;
      for (std::size_t i = 0; i + 1 < crossings.size(); ++i) {
        winding += crossings[i].winding;
        const bool inside = fill_rule == FillRule::nonzero ? winding != 0 : (winding & 1) != 0;
        if (inside) add_span(crossings[i].x, crossings[i + 1].x, ox, weight, coverage, runs);
      }
      touched = true;
    }
    if (!touched) continue;
    double run = 0.0;
    for (int x = 0; x < width; ++x) {
      run += runs[static_cast<std::size_t>(x)];
      mask.at(x, row) = std::clamp(coverage[static_cast<std::size_t>(x)] + run, 0.0, 1.0);
    }
  }
  return mask;
}

AlphaMask mask_from_alpha(const RasterImage& image) {
  AlphaMask mask(image.width(), image.height());
  for (int y = 0; y < image.height(); ++y) {
    for (int x = 0; x < image.width(); ++x) {
      mask.at(x, y) = image.channels() == 4 ? image.pixel(x, y)[3] / 255.0 : 1.0;
    }
  }
  return mask;
}

}  // namespace typotex
