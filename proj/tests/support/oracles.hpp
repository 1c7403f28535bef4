#pragma once

// Reference implementations written independently of the library, used as
// oracles. They trade speed for directness.

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "typotex/geometry.hpp"
#include "typotex/image.hpp"

namespace oracle {

inline double sinc(double x) {
  if (x == 0.0) return 1.0;
  const double px = std::numbers::pi * x;
  return std::sin(px) / px;
}

inline double lanczos(double x, int a) { return std::abs(x) < a ? sinc(x) * sinc(x / a) : 0.0; }

inline int wrap_index(int i, int n) { return ((i % n) + n) % n; }
inline int clamp_index(int i, int n) { return i < 0 ? 0 : (i >= n ? n - 1 : i); }

/// Direct 2D windowed-sinc resampling: every output pixel sums the full 2D
/// kernel footprint and divides by the total weight.
inline std::vector<double> direct_resample(const typotex::Image& src, double s, bool wrap, int out_w,
                                           int out_h, int a = 3) {
  const int w = src.width();
  const int h = src.height();
  const int ch = src.channels();
  const double support = a / s;
  std::vector<double> out(static_cast<std::size_t>(out_w) * out_h * ch, 0.0);
  for (int oy = 0; oy < out_h; ++oy) {
    for (int ox = 0; ox < out_w; ++ox) {
      const double cx = (ox + 0.5) / s;
      const double cy = (oy + 0.5) / s;
      std::vector<double> acc(ch, 0.0);
      double total = 0.0;
      for (int sy = static_cast<int>(std::floor(cy - support)) - 1; sy <= static_cast<int>(std::ceil(cy + support)) + 1; ++sy) {
        for (int sx = static_cast<int>(std::floor(cx - support)) - 1; sx <= static_cast<int>(std::ceil(cx + support)) + 1; ++sx) {
          const double wgt = lanczos((sx + 0.5 - cx) * s, a) * lanczos((sy + 0.5 - cy) * s, a);
          if (wgt == 0.0) continue;
          const int px = wrap ? wrap_index(sx, w) : clamp_index(sx, w);
          const int py = wrap ? wrap_index(sy, h) : clamp_index(sy, h);
          const std::uint8_t* p = src.pixel(px, py);
          for (int c = 0; c < ch; ++c) acc[c] += wgt * p[c];
          total += wgt;
        }
      }
      for (int c = 0; c < ch; ++c) {
        out[(static_cast<std::size_t>(oy) * out_w + ox) * ch + c] = acc[c] / total;
      }
    }
  }
  return out;
}

/// Arc length by composite 8-point Gauss-Legendre quadrature of the speed.
inline double quadrature_arc_length(const typotex::CubicSegment& seg, int panels = 512) {
  static const std::array<double, 8> x = {0.1834346424956498, 0.5255324099163290, 0.7966664774136267,
                                          0.9602898564975363, -0.1834346424956498, -0.5255324099163290,
                                          -0.7966664774136267, -0.9602898564975363};
  static const std::array<double, 8> w = {0.3626837833783620, 0.3137066458778873, 0.2223810344533745,
                                          0.1012285362903763, 0.3626837833783620, 0.3137066458778873,
                                          0.2223810344533745, 0.1012285362903763};
  auto speed = [&](double t) {
    const double u = 1 - t;
    const double dx = 3 * u * u * (seg.c1.x - seg.p0.x) + 6 * u * t * (seg.c2.x - seg.c1.x) +
                      3 * t * t * (seg.p3.x - seg.c2.x);
    const double dy = 3 * u * u * (seg.c1.y - seg.p0.y) + 6 * u * t * (seg.c2.y - seg.c1.y) +
                      3 * t * t * (seg.p3.y - seg.c2.y);
    return std::hypot(dx, dy);
  };
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double a = static_cast<double>(p) / panels;
    const double b = static_cast<double>(p + 1) / panels;
    for (std::size_t k = 0; k < x.size(); ++k) {
      total += 0.5 * (b - a) * w[k] * speed(0.5 * (a + b) + 0.5 * (b - a) * x[k]);
    }
  }
  return total;
}

inline typotex::Point2 bezier(const typotex::CubicSegment& s, double t) {
  const double u = 1 - t;
  const double b0 = u * u * u, b1 = 3 * u * u * t, b2 = 3 * u * t * t, b3 = t * t * t;
  return {b0 * s.p0.x + b1 * s.c1.x + b2 * s.c2.x + b3 * s.p3.x,
          b0 * s.p0.y + b1 * s.c1.y + b2 * s.c2.y + b3 * s.p3.y};
}

/// Signed area enclosed by closed cubic contours (Green's theorem). The
/// integrand x(t) y'(t) is a degree-5 polynomial, so 3-point Gauss-Legendre
/// is exact.
inline double enclosed_area(const std::vector<typotex::Contour>& contours) {
  const double nodes[3] = {-std::sqrt(0.6), 0.0, std::sqrt(0.6)};
  const double weights[3] = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
  double area = 0.0;
  for (const auto& c : contours) {
    for (const auto& s : c.segments()) {
      for (int k = 0; k < 3; ++k) {
        const double t = 0.5 + 0.5 * nodes[k];
        const double u = 1 - t;
        const double x = bezier(s, t).x;
        const double dy = 3 * u * u * (s.c1.y - s.p0.y) + 6 * u * t * (s.c2.y - s.c1.y) +
                          3 * t * t * (s.p3.y - s.c2.y);
        area += 0.5 * weights[k] * x * dy;
      }
    }
  }
  return area;
}

/// Coverage by point sampling an n x n grid inside each pixel against a
/// densely sampled polygon (nonzero winding).
inline std::vector<double> supersampled_coverage(const std::vector<typotex::Contour>& contours, int w, int h,
                                                 int n = 16, int samples_per_segment = 256) {
  std::vector<std::vector<typotex::Point2>> polys;
  for (const auto& c : contours) {
    std::vector<typotex::Point2> poly;
    for (const auto& s : c.segments()) {
      for (int i = 0; i < samples_per_segment; ++i) poly.push_back(bezier(s, static_cast<double>(i) / samples_per_segment));
    }
    polys.push_back(std::move(poly));
  }
  auto winding = [&](double px, double py) {
    int wn = 0;
    for (const auto& poly : polys) {
      for (std::size_t i = 0; i < poly.size(); ++i) {
        const auto a = poly[i];
        const auto b = poly[(i + 1) % poly.size()];
        const double cross = (b.x - a.x) * (py - a.y) - (px - a.x) * (b.y - a.y);
        if (a.y <= py) {
          if (b.y > py && cross > 0) ++wn;
        } else if (b.y <= py && cross < 0) {
          --wn;
        }
      }
    }
    return wn;
  };
  std::vector<double> out(static_cast<std::size_t>(w) * h, 0.0);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      int inside = 0;
      for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
          if (winding(x + (i + 0.5) / n, y + (j + 0.5) / n) != 0) ++inside;
        }
      }
      out[static_cast<std::size_t>(y) * w + x] = static_cast<double>(inside) / (n * n);
    }
  }
  return out;
}

}  // namespace oracle
