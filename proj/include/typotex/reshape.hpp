#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "typotex/font.hpp"
#include "typotex/geometry.hpp"
#include "typotex/raster.hpp"

namespace typotex {

/// The three user inputs: a semantic concept, a word, and the letter of
/// that word to stylize. Strings are UTF-8.
struct SessionInputs {
  std::string concept_text;
  std::string word;
  std::string letter;

  /// Throws ValidationError naming the offending field: concept and word
  /// must be non-blank, letter a single non-space character that occurs in
  /// the word (ASCII letters compare case-insensitively).
  void validate() const;
};

enum class ReshapeMode { remote, plain };

std::string_view to_string(ReshapeMode mode);
ReshapeMode parse_reshape_mode(std::string_view name);

struct ReshapeClientConfig {
  ReshapeMode mode = ReshapeMode::plain;
  std::optional<std::string> endpoint;
  std::chrono::milliseconds timeout{600000};

  void validate() const;
};

struct PlacedGlyph {
  char32_t codepoint = 0;
  double x_offset = 0;
  /// Contours already shifted by x_offset.
  std::vector<Contour> contours;
};

/// Outline of the whole word, in the coordinate frame of its source: font
/// layout units at the requested em size, or SVG user units.
struct TextShape {
  std::vector<Contour> contours;
  FillRule fill_rule = FillRule::nonzero;
  /// Per-character layout; filled in plain mode only.
  std::vector<PlacedGlyph> glyphs;
};

inline constexpr double kLayoutEmSize = 256.0;

/// Lays the word out left to right with the font's advance widths and no
/// kerning. Whitespace advances the pen without adding contours. Throws
/// LayoutError when a character has no glyph.
TextShape layout_word(const Font& font, std::string_view word, double em_size = kLayoutEmSize);

/// Produces the word's outline. remote: POST {"concept","word","letter"}
/// to the endpoint and parse the SVG reply. plain: layout_word, letter
/// left undeformed.
///
/// `font` may be null in remote mode. Throws ReshapeTimeout,
/// ReshapeRejected, ServiceUnavailable, LayoutError, or SvgError/ParseError
/// for an unusable reply.
TextShape reshape_text(const SessionInputs& inputs, const ReshapeClientConfig& config, const Font* font);

/// Decodes UTF-8 into codepoints; invalid sequences become U+FFFD.
std::u32string decode_utf8(std::string_view text);

}  // namespace typotex
