#include "typotex/reshape.hpp"

#include "http_client.hpp"
#include "json.hpp"
#include "typotex/errors.hpp"
#include "typotex/svg_document.hpp"

namespace typotex {
namespace {

bool is_blank(std::string_view s) { return s.find_first_not_of(" \t\n\r\f\v") == std::string_view::npos; }

char32_t fold_ascii(char32_t c) { return c >= U'A' && c <= U'Z' ? c + (U'a' - U'A') : c; }

}  // namespace

std::u32string decode_utf8(std::string_view text) {
  std::u32string out;
  for (std::size_t i = 0; i < text.size();) {
    const auto b0 = static_cast<unsigned char>(text[i]);
    int extra = 0;
    char32_t cp = 0;
    if (b0 < 0x80) {
      cp = b0;
    } else if ((b0 & 0xE0) == 0xC0) {
      extra = 1;
      cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
      extra = 2;
      cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
      extra = 3;
      cp = b0 & 0x07;
    } else {
      out.push_back(0xFFFD);
      ++i;
      continue;
    }
    if (i + static_cast<std::size_t>(extra) >= text.size()) {
      out.push_back(0xFFFD);
      break;
    }
    bool valid = true;
    for (int k = 1; k <= extra; ++k) {
      const auto b = static_cast<unsigned char>(text[i + static_cast<std::size_t>(k)]);
      if ((b & 0xC0) != 0x80) {
        valid = false;
        break;
      }
      cp = cp << 6 | (b & 0x3F);
    }
    if (!valid) {
      out.push_back(0xFFFD);
      ++i;
      continue;
    }
    out.push_back(cp);
    i += static_cast<std::size_t>(extra) + 1;
  }
  return out;
}

void SessionInputs::validate() const {
  if (is_blank(concept_text)) throw ValidationError("concept", "must not be empty");
  if (is_blank(word)) throw ValidationError("word", "must not be empty");
  const std::u32string letter_cps = decode_utf8(letter);
  if (letter_cps.size() != 1 || is_blank(letter)) {
    throw ValidationError("letter", "must be exactly one non-space character");
  }
  const char32_t wanted = fold_ascii(letter_cps.front());
  for (const char32_t c : decode_utf8(word)) {
    if (fold_ascii(c) == wanted) return;
  }
  throw ValidationError("letter", "'" + letter + "' does not occur in '" + word + "'");
}

std::string_view to_string(ReshapeMode mode) { return mode == ReshapeMode::remote ? "remote" : "plain"; }

ReshapeMode parse_reshape_mode(std::string_view name) {
  if (name == "remote") return ReshapeMode::remote;
  if (name == "plain") return ReshapeMode::plain;
  throw ConfigError("unknown reshape mode '" + std::string(name) + "'");
}

void ReshapeClientConfig::validate() const {
  if (mode == ReshapeMode::remote && (!endpoint || endpoint->empty())) {
    throw ConfigError("remote reshape mode requires an endpoint");
  }
  if (timeout.count() <= 0) throw ConfigError("reshape timeout must be positive");
}

TextShape layout_word(const Font& font, std::string_view word, double em_size) {
  TextShape shape;
  double pen = 0.0;
  for (const char32_t cp : decode_utf8(word)) {
    GlyphOutline outline;
    try {
      outline = font.outline(cp, em_size);
    } catch (const MissingGlyph& e) {
      throw LayoutError(std::string("cannot lay out word: ") + e.what());
    }
    PlacedGlyph placed{cp, pen, {}};
    for (const Contour& c : outline.contours) {
      placed.contours.push_back(c.translated({pen, 0.0}));
      shape.contours.push_back(placed.contours.back());
    }
    shape.glyphs.push_back(std::move(placed));
    pen += outline.advance;
  }
  return shape;
}

TextShape reshape_text(const SessionInputs& inputs, const ReshapeClientConfig& config, const Font* font) {
  inputs.validate();
  config.validate();
  if (config.mode == ReshapeMode::plain) {
    if (font == nullptr) throw LayoutError("plain reshape mode needs a font");
    return layout_word(*font, inputs.word);
  }

  const nlohmann::json body = {{"concept", inputs.concept_text}, {"word", inputs.word}, {"letter", inputs.letter}};
  const detail::HttpOutcome outcome = detail::post_json(*config.endpoint, body.dump(), config.timeout, std::nullopt);
  switch (outcome.kind) {
    case detail::HttpOutcome::Kind::timeout:
      throw ReshapeTimeout("reshape service timed out: " + outcome.error);
    case detail::HttpOutcome::Kind::unreachable:
      throw ServiceUnavailable("reshape service unreachable: " + outcome.error);
    case detail::HttpOutcome::Kind::ok:
      break;
  }
  if (outcome.status < 200 || outcome.status > 299) throw ReshapeRejected(outcome.status, outcome.body);
  SvgDocument doc = parse_svg_document(outcome.body);
  return TextShape{std::move(doc.contours), doc.fill_rule, {}};
}

}  // namespace typotex
