#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "typotex/image.hpp"

namespace typotex {

/// sRGB background color; white unless the user picks another.
struct BackgroundColor {
  std::uint8_t r = 255;
  std::uint8_t g = 255;
  std::uint8_t b = 255;

  friend bool operator==(const BackgroundColor&, const BackgroundColor&) = default;
};

/// Accepts "#RRGGBB" or "#RGB", case-insensitive. Throws InvalidColor.
BackgroundColor parse_hex_color(std::string_view text);

/// Uppercase "#RRGGBB".
std::string format_hex_color(const BackgroundColor& color);

/// Blends the textured canvas over the background through the mask:
/// out = round(M * T' + (1 - M) * B) per channel, rounding half away from
/// zero. Output is opaque RGB; any alpha in the canvas is ignored. Throws
/// DimensionMismatch when mask and canvas differ in size.
ComposedImage composite(const AlphaMask& mask, const Canvas& textured, const BackgroundColor& background);

/// Single-channel form of the blend, exposed for property checks.
std::uint8_t blend_channel(double coverage, std::uint8_t texture, std::uint8_t background);

}  // namespace typotex
