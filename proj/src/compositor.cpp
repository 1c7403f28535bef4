#include "typotex/compositor.hpp"

#include <algorithm>
#include <cmath>

#include "typotex/errors.hpp"

namespace typotex {
namespace {

int hex_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

BackgroundColor parse_hex_color(std::string_view text) {
  auto invalid = [&] { return InvalidColor("invalid color '" + std::string(text) + "', expected #RRGGBB or #RGB"); };
  if (text.empty() || text.front() != '#') throw invalid();
  const std::string_view digits = text.substr(1);
  int values[6] = {};
  if (digits.size() != 3 && digits.size() != 6) throw invalid();
  for (std::size_t i = 0; i < digits.size(); ++i) {
    values[i] = hex_digit(digits[i]);
    if (values[i] < 0) throw invalid();
  }
  auto channel = [&](int i) {
    if (digits.size() == 3) return static_cast<std::uint8_t>(values[i] * 17);
    return static_cast<std::uint8_t>(values[2 * i] * 16 + values[2 * i + 1]);
  };
  return {channel(0), channel(1), channel(2)};
}

std::string format_hex_color(const BackgroundColor& color) {
  static constexpr char kDigits[] = "0123456789ABCDEF";
  std::string out = "#";
  for (const std::uint8_t v : {color.r, color.g, color.b}) {
    out.push_back(kDigits[v >> 4]);
    out.push_back(kDigits[v & 0xF]);
  }
  return out;
}

std::uint8_t blend_channel(double coverage, std::uint8_t texture, std::uint8_t background) {
  const double m = std::clamp(coverage, 0.0, 1.0);
  const double value = m * texture + (1.0 - m) * background;
  return static_cast<std::uint8_t>(std::clamp(std::round(value), 0.0, 255.0));
}

ComposedImage composite(const AlphaMask& mask, const Canvas& textured, const BackgroundColor& background) {
  if (mask.width() != textured.width() || mask.height() != textured.height()) {
    throw DimensionMismatch("mask is " + std::to_string(mask.width()) + "x" + std::to_string(mask.height()) +
                            " but canvas is " + std::to_string(textured.width()) + "x" +
                            std::to_string(textured.height()));
  }
  Canvas expanded;
  const Canvas* rgb = &textured;
  if (textured.channels() == 1) {
    expanded = textured.with_channels(3);
    rgb = &expanded;
  }
  const std::uint8_t bg[3] = {background.r, background.g, background.b};
  ComposedImage out(mask.width(), mask.height(), 3);
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) {
      const double m = mask.at(x, y);
      const std::uint8_t* t = rgb->pixel(x, y);
      std::uint8_t* o = out.pixel(x, y);
      for (int c = 0; c < 3; ++c) o[c] = blend_channel(m, t[c], bg[c]);
    }
  }
  return out;
}

}  // namespace typotex
