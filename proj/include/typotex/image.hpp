#pragma once

#include <cstdint>
#include <vector>

namespace typotex {

/// Row-major 8-bit image with 1 (gray), 3 (RGB) or 4 (RGBA, straight alpha)
/// interleaved channels.
class Image {
 public:
  Image() = default;
  Image(int width, int height, int channels);
  Image(int width, int height, int channels, std::vector<std::uint8_t> pixels);

  int width() const { return width_; }
  int height() const { return height_; }
  int channels() const { return channels_; }
  bool empty() const { return pixels_.empty(); }

  std::uint8_t* pixel(int x, int y) { return pixels_.data() + index(x, y); }
  const std::uint8_t* pixel(int x, int y) const { return pixels_.data() + index(x, y); }

  const std::vector<std::uint8_t>& data() const { return pixels_; }
  std::vector<std::uint8_t>& data() { return pixels_; }

  /// Copy converted to `channels`; gray expands to RGB, missing alpha is
  /// opaque, dropped alpha is discarded.
  Image with_channels(int channels) const;

  friend bool operator==(const Image&, const Image&) = default;

 private:
  std::size_t index(int x, int y) const {
    return (static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x)) *
           static_cast<std::size_t>(channels_);
  }

  int width_ = 0;
  int height_ = 0;
  int channels_ = 0;
  std::vector<std::uint8_t> pixels_;
};

/// RGBA input artwork (text image).
using RasterImage = Image;
/// Texture T / T'. RGB or RGBA.
using TextureImage = Image;
/// Tiled texture sized to the text image.
using Canvas = Image;
/// Final opaque RGB output.
using ComposedImage = Image;

/// Per-pixel coverage in [0, 1].
class AlphaMask {
 public:
  AlphaMask() = default;
  AlphaMask(int width, int height);

  int width() const { return width_; }
  int height() const { return height_; }

  double& at(int x, int y) { return values_[static_cast<std::size_t>(y) * width_ + x]; }
  double at(int x, int y) const { return values_[static_cast<std::size_t>(y) * width_ + x]; }

  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }

  double sum() const;

  /// 8-bit grayscale rendering, value * 255 rounded.
  Image to_gray() const;

  friend bool operator==(const AlphaMask&, const AlphaMask&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<double> values_;
};

}  // namespace typotex
