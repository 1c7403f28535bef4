#include "typotex/image.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "typotex/errors.hpp"

namespace typotex {

Image::Image(int width, int height, int channels)
    : Image(width, height, channels,
            std::vector<std::uint8_t>(static_cast<std::size_t>(width < 0 ? 0 : width) *
                                      static_cast<std::size_t>(height < 0 ? 0 : height) *
                                      static_cast<std::size_t>(channels < 0 ? 0 : channels))) {}

Image::Image(int width, int height, int channels, std::vector<std::uint8_t> pixels)
    : width_(width), height_(height), channels_(channels), pixels_(std::move(pixels)) {
  if (width < 1 || height < 1) throw Error("image dimensions must be at least 1x1");
  if (channels != 1 && channels != 3 && channels != 4) throw Error("image must have 1, 3 or 4 channels");
  if (pixels_.size() != static_cast<std::size_t>(width) * height * channels) {
    throw Error("pixel buffer size does not match image dimensions");
  }
}

Image Image::with_channels(int channels) const {
  if (channels == channels_) return *this;
  Image out(width_, height_, channels);
  for (int y = 0; y < height_; ++y) {
    for (int x = 0; x < width_; ++x) {
      const std::uint8_t* src = pixel(x, y);
      std::uint8_t* dst = out.pixel(x, y);
      std::uint8_t rgba[4] = {src[0], src[0], src[0], 255};
      if (channels_ >= 3) {
        rgba[1] = src[1];
        rgba[2] = src[2];
      }
      if (channels_ == 4) rgba[3] = src[3];
      if (channels == 1) {
        dst[0] = static_cast<std::uint8_t>(std::lround(0.299 * rgba[0] + 0.587 * rgba[1] + 0.114 * rgba[2]));
      } else {
        for (int c = 0; c < channels; ++c) dst[c] = rgba[c];
      }
    }
  }
  return out;
}

AlphaMask::AlphaMask(int width, int height) : width_(width), height_(height) {
  if (width < 1 || height < 1) throw Error("mask dimensions must be at least 1x1");
  values_.assign(static_cast<std::size_t>(width) * height, 0.0);
}

double AlphaMask::sum() const { return std::accumulate(values_.begin(), values_.end(), 0.0); }

Image AlphaMask::to_gray() const {
  Image out(width_, height_, 1);
  for (std::size_t i = 0; i < values_.size(); ++i) {
    out.data()[i] = static_cast<std::uint8_t>(std::lround(std::clamp(values_[i], 0.0, 1.0) * 255.0));
  }
  return out;
}

}  // namespace typotex
