#pragma once

#include <vector>

#include "typotex/image.hpp"

namespace typotex {

inline constexpr int kDefaultLobes = 3;

/// Texture scale in (0, 1]. Construction outside that range throws
/// InvalidScale.
class ScaleFactor {
 public:
  explicit ScaleFactor(double s);
  double value() const { return s_; }
  friend bool operator==(ScaleFactor, ScaleFactor) = default;

 private:
  double s_;
};

/// How source indices outside the image are mapped: clamp repeats the edge
/// pixel, wrap treats the texture as periodic.
enum class Boundary { clamp, wrap };

/// Lanczos window: sinc(x) * sinc(x / a) for |x| < a, else 0. Exactly 1 at
/// 0 and exactly 0 at the other integers.
double kernel_weight(double x, int lobes = kDefaultLobes);

/// One output sample's contributions: source indices (already mapped
/// through the boundary rule) and weights that sum to 1.
struct FilterRow {
  std::vector<int> indices;
  std::vector<double> weights;
};

/// Output size for scaling `size` by `s`: ceil(s * size), computed with a
/// small guard so products such as 0.15 * 100 are not pushed up by rounding.
int scaled_size(int size, double s);

/// Filter rows for mapping `src_size` samples onto `dst_size` samples at
/// scale `s`. Output sample i is centered at source coordinate (i + 0.5) / s;
/// when s < 1 the kernel is widened by 1/s.
std::vector<FilterRow> filter_rows(int src_size, int dst_size, double s, Boundary boundary,
                                   int lobes = kDefaultLobes);

/// Real-valued image, interleaved channels, used before quantization.
struct RealImage {
  int width = 0;
  int height = 0;
  int channels = 0;
  std::vector<double> values;

  double at(int x, int y, int c) const {
    return values[(static_cast<std::size_t>(y) * width + x) * channels + c];
  }
};

/// Separable two-pass resampling without quantization.
RealImage resample_real(const TextureImage& texture, ScaleFactor s, Boundary boundary,
                        int lobes = kDefaultLobes);

/// Scales `texture` by `s`, rounding and clamping each channel to 8 bits.
/// Throws DegenerateOutput if an output dimension would be zero.
TextureImage resample(const TextureImage& texture, ScaleFactor s, Boundary boundary = Boundary::wrap,
                      int lobes = kDefaultLobes);

/// Resizes to an exact size in either direction with the same filter, each
/// axis using its own ratio. Used to conform service output to a requested
/// size; texture scaling itself goes through resample().
TextureImage resize(const TextureImage& texture, int width, int height, Boundary boundary = Boundary::clamp,
                    int lobes = kDefaultLobes);

}  // namespace typotex
