#include "typotex/tiler.hpp"

#include <algorithm>

namespace typotex {

namespace {
int wrap(long long v, int n) {
  const auto m = static_cast<int>(v % n);
  return m < 0 ? m + n : m;
}
}  // namespace

Canvas tile(const TextureImage& texture, int width, int height, TileOffset offset) {
  const int tw = texture.width();
  const int th = texture.height();
  const int channels = texture.channels();
  Canvas canvas(width, height, channels);
  for (int y = 0; y < height; ++y) {
    const int ty = wrap(static_cast<long long>(y) + offset.dy, th);
    const std::uint8_t* src_row = texture.pixel(0, ty);
    std::uint8_t* dst = canvas.pixel(0, y);
    int x = 0;
    int tx = wrap(offset.dx, tw);
    while (x < width) {
      const int run = std::min(tw - tx, width - x);
      std::copy_n(src_row + static_cast<std::size_t>(tx) * channels, static_cast<std::size_t>(run) * channels,
                  dst + static_cast<std::size_t>(x) * channels);
      x += run;
      tx = 0;
    }
  }
  return canvas;
}

}  // namespace typotex
