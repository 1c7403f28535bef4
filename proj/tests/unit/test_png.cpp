#include "doctest.h"
#include "generators.hpp"
#include "typotex/errors.hpp"
#include "typotex/png_codec.hpp"

using namespace typotex;

TEST_CASE("PNG signature") {
  const auto bytes = encode_png(Image(1, 1, 3, {255, 255, 255}));
  const std::vector<std::uint8_t> signature = {0x89, 0x50, 0x4E, 0x47, 0x0D, 0x0A, 0x1A, 0x0A};
  REQUIRE(bytes.size() > 8);
  CHECK(std::equal(signature.begin(), signature.end(), bytes.begin()));
}

TEST_CASE("white pixel round trip") {
  const Image img(1, 1, 3, {255, 255, 255});
  CHECK(decode_png(encode_png(img)) == img);
}

TEST_CASE("random images round trip losslessly") {
  testgen::Rng rng(1);
  for (int ch : {3, 4}) {
    const Image img = rng.image(64, 64, ch);
    CHECK(decode_png(encode_png(img)) == img);
  }
}

TEST_CASE("gray images decode as RGB") {
  const Image gray(2, 1, 1, {0, 200});
  const Image back = decode_png(encode_png(gray));
  CHECK(back.channels() == 3);
  CHECK(back.data() == std::vector<std::uint8_t>{0, 0, 0, 200, 200, 200});
}

TEST_CASE("garbage is a decode error") {
  const std::vector<std::uint8_t> junk = {1, 2, 3, 4, 5};
  CHECK_THROWS_AS(decode_png(junk), DecodeError);
  CHECK_THROWS_AS(decode_png({}), DecodeError);
}

TEST_CASE("missing files") {
  CHECK_THROWS_AS(load_png("/nonexistent/file.png"), FileNotFound);
}
