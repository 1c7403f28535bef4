#include "doctest.h"
#include "generators.hpp"
#include "typotex/tiler.hpp"

using namespace typotex;

namespace {
bool same_pixel(const Image& a, int ax, int ay, const Image& b, int bx, int by) {
  return std::equal(a.pixel(ax, ay), a.pixel(ax, ay) + a.channels(), b.pixel(bx, by));
}
}  // namespace

TEST_CASE("modular indexing on a 25x25 canvas") {
  testgen::Rng rng(1);
  const Image tex = rng.image(10, 10, 3);
  const Canvas c = tile(tex, 25, 25);
  CHECK(c.width() == 25);
  CHECK(same_pixel(c, 12, 7, tex, 2, 7));
}

TEST_CASE("canvas the size of the texture is the texture") {
  testgen::Rng rng(2);
  const Image tex = rng.image(13, 9, 4);
  CHECK(tile(tex, 13, 9) == tex);
}

TEST_CASE("quadrants of a 2x2 tiling are identical") {
  testgen::Rng rng(3);
  const Image tex = rng.image(4, 4, 3);
  const Canvas c = tile(tex, 8, 8);
  for (int y = 0; y < 4; ++y) {
    for (int x = 0; x < 4; ++x) {
      CHECK(same_pixel(c, x, y, c, x + 4, y));
      CHECK(same_pixel(c, x, y, c, x, y + 4));
      CHECK(same_pixel(c, x, y, c, x + 4, y + 4));
    }
  }
}

TEST_CASE("property: tiling is exact modular indexing") {
  testgen::Rng rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    const Image tex = rng.image(rng.integer(1, 20), rng.integer(1, 20), rng.integer(0, 1) ? 3 : 4);
    const int w = rng.integer(1, 70), h = rng.integer(1, 70);
    const Canvas c = tile(tex, w, h);
    REQUIRE(c.width() == w);
    REQUIRE(c.height() == h);
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        if (!same_pixel(c, x, y, tex, x % tex.width(), y % tex.height())) FAIL("mismatch at " << x << "," << y);
      }
    }
  }
}

TEST_CASE("phase offset shifts the grid") {
  testgen::Rng rng(5);
  const Image tex = rng.image(5, 3, 3);
  const Canvas c = tile(tex, 11, 7, {2, 1});
  for (int y = 0; y < 7; ++y) {
    for (int x = 0; x < 11; ++x) CHECK(same_pixel(c, x, y, tex, (x + 2) % 5, (y + 1) % 3));
  }
}
