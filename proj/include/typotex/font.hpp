#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "typotex/geometry.hpp"

namespace typotex {

/// An sfnt font (TrueType `glyf` or CFF-flavored OpenType) holding its own
/// copy of the file bytes. Immutable after construction.
class Font {
 public:
  /// Throws UnsupportedFont if the data is not a font this reader handles.
  explicit Font(std::vector<std::uint8_t> data);
  ~Font();
  Font(Font&&) noexcept;
  Font& operator=(Font&&) noexcept;

  static Font from_file(const std::string& path);

  double units_per_em() const;
  bool is_cff() const;

  /// Glyph index for a Unicode codepoint; 0 (.notdef) when unmapped.
  std::uint32_t glyph_index(char32_t codepoint) const;

  /// Advance width in font units.
  double advance_width(std::uint32_t glyph) const;

  /// Outline for `codepoint` with the em square scaled to `size_px`. The
  /// y axis is flipped into canvas orientation (down is positive) with the
  /// baseline at y = 0; point order within each contour follows the font.
  ///
  /// Whitespace and other outline-less glyphs give an empty outline. Throws
  /// MissingGlyph when the codepoint has no glyph.
  GlyphOutline outline(char32_t codepoint, double size_px) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Parses `font_bytes` and extracts one glyph outline; see Font::outline.
GlyphOutline outline_from_font(std::span<const std::uint8_t> font_bytes, char32_t codepoint,
                               double size_px);

}  // namespace typotex
