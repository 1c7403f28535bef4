#pragma once

#include "typotex/image.hpp"

namespace typotex {

/// Integer phase of the tiling grid. Canvas pixel (x, y) reads texture
/// pixel ((x + dx) mod tw, (y + dy) mod th).
struct TileOffset {
  int dx = 0;
  int dy = 0;
};

/// Repeats `texture` over a width x height canvas from the top-left corner.
/// Partial tiles at the right and bottom are cropped.
Canvas tile(const TextureImage& texture, int width, int height, TileOffset offset = {});

}  // namespace typotex
