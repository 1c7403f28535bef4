#include "typotex/resample.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "typotex/errors.hpp"

namespace typotex {

ScaleFactor::ScaleFactor(double s) : s_(s) {
  if (!(s > 0.0 && s <= 1.0)) throw InvalidScale("scale must lie in (0, 1], got " + std::to_string(s));
}

namespace {

double sinc(double x) {
  const double px = std::numbers::pi * x;
  return std::sin(px) / px;
}

int map_index(int j, int size, Boundary boundary) {
  if (boundary == Boundary::clamp) return std::clamp(j, 0, size - 1);
  const int m = j % size;
  return m < 0 ? m + size : m;
}

}  // namespace

double kernel_weight(double x, int lobes) {
  const double ax = std::fabs(x);
  if (ax >= lobes) return 0.0;
  if (ax == 0.0) return 1.0;
  if (ax == std::floor(ax)) return 0.0;
  return sinc(ax) * sinc(ax / lobes);
}

int scaled_size(int size, double s) { return static_cast<int>(std::ceil(s * size - 1e-9)); }

std::vector<FilterRow> filter_rows(int src_size, int dst_size, double s, Boundary boundary, int lobes) {
  const double stretch = std::max(1.0, 1.0 / s);
  const double support = lobes * stretch;
  std::vector<FilterRow> rows(static_cast<std::size_t>(dst_size));
  for (int i = 0; i < dst_size; ++i) {
    const double center = (i + 0.5) / s;
    const int first = static_cast<int>(std::floor(center - support - 0.5));
    const int last = static_cast<int>(std::ceil(center + support - 0.5));
    FilterRow& row = rows[static_cast<std::size_t>(i)];
    double total = 0.0;
    for (int j = first; j <= last; ++j) {
      const double w = kernel_weight((j + 0.5 - center) / stretch, lobes);
      if (w == 0.0) continue;
      row.indices.push_back(map_index(j, src_size, boundary));
      row.weights.push_back(w);
      total += w;
    }
    if (total == 0.0) {
      // Unreachable for a valid kernel; keep the nearest sample regardless.
      row.indices.assign(1, map_index(static_cast<int>(std::floor(center)), src_size, boundary));
      row.weights.assign(1, 1.0);
      continue;
    }
    for (double& w : row.weights) w /= total;
  }
  return rows;
}

namespace {

RealImage filter_separable(const TextureImage& texture, int dst_w, int dst_h, double sx, double sy,
                           Boundary boundary, int lobes) {
  const int src_w = texture.width();
  const int src_h = texture.height();
  const int channels = texture.channels();
  const std::vector<FilterRow> columns = filter_rows(src_w, dst_w, sx, boundary, lobes);
  const std::vector<FilterRow> rows = filter_rows(src_h, dst_h, sy, boundary, lobes);
  const auto stride = static_cast<std::size_t>(channels);

  // Horizontal pass: src_h rows of dst_w samples.
  std::vector<double> horizontal(static_cast<std::size_t>(src_h) * dst_w * stride);
  for (int y = 0; y < src_h; ++y) {
    for (int x = 0; x < dst_w; ++x) {
      const FilterRow& f = columns[static_cast<std::size_t>(x)];
      double* out = &horizontal[(static_cast<std::size_t>(y) * dst_w + x) * stride];
      for (std::size_t k = 0; k < f.indices.size(); ++k) {
        const std::uint8_t* px = texture.pixel(f.indices[k], y);
        for (std::size_t c = 0; c < stride; ++c) out[c] += f.weights[k] * px[c];
      }
    }
  }

  RealImage result{dst_w, dst_h, channels, std::vector<double>(static_cast<std::size_t>(dst_w) * dst_h * stride)};
  for (int y = 0; y < dst_h; ++y) {
    const FilterRow& f = rows[static_cast<std::size_t>(y)];
    for (int x = 0; x < dst_w; ++x) {
      double* out = &result.values[(static_cast<std::size_t>(y) * dst_w + x) * stride];
      for (std::size_t k = 0; k < f.indices.size(); ++k) {
        const double* in = &horizontal[(static_cast<std::size_t>(f.indices[k]) * dst_w + x) * stride];
        for (std::size_t c = 0; c < stride; ++c) out[c] += f.weights[k] * in[c];
      }
    }
  }
  return result;
}

TextureImage quantize(const RealImage& real) {
  TextureImage out(real.width, real.height, real.channels);
  for (std::size_t i = 0; i < real.values.size(); ++i) {
    out.data()[i] = static_cast<std::uint8_t>(std::clamp(std::round(real.values[i]), 0.0, 255.0));
  }
  return out;
}

}  // namespace

RealImage resample_real(const TextureImage& texture, ScaleFactor s, Boundary boundary, int lobes) {
  const int dst_w = scaled_size(texture.width(), s.value());
  const int dst_h = scaled_size(texture.height(), s.value());
  if (dst_w < 1 || dst_h < 1) throw DegenerateOutput("scaled texture would have zero size");
  return filter_separable(texture, dst_w, dst_h, s.value(), s.value(), boundary, lobes);
}

TextureImage resample(const TextureImage& texture, ScaleFactor s, Boundary boundary, int lobes) {
  return quantize(resample_real(texture, s, boundary, lobes));
}

TextureImage resize(const TextureImage& texture, int width, int height, Boundary boundary, int lobes) {
  if (width < 1 || height < 1) throw DegenerateOutput("resize target must be at least 1x1");
  if (width == texture.width() && height == texture.height()) return texture;
  const double sx = static_cast<double>(width) / texture.width();
  const double sy = static_cast<double>(height) / texture.height();
  return quantize(filter_separable(texture, width, height, sx, sy, boundary, lobes));
}

}  // namespace typotex
