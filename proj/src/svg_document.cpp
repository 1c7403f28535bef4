#include "typotex/svg_document.hpp"

#include <charconv>
#include <map>
#include <optional>
#include <string>

#include "typotex/errors.hpp"
#include "typotex/png_codec.hpp"
#include "typotex/svg_path.hpp"

namespace typotex {
namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

std::string decode_entities(std::string_view s) {
  static const std::pair<std::string_view, char> kEntities[] = {
      {"&amp;", '&'}, {"&lt;", '<'}, {"&gt;", '>'}, {"&quot;", '"'}, {"&apos;", '\''}};
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size();) {
    bool replaced = false;
    if (s[i] == '&') {
      for (const auto& [name, ch] : kEntities) {
        if (s.substr(i, name.size()) == name) {
          out.push_back(ch);
          i += name.size();
          replaced = true;
          break;
        }
      }
    }
    if (!replaced) out.push_back(s[i++]);
  }
  return out;
}

struct Tag {
  std::string name;
  std::map<std::string, std::string> attributes;
  bool closing = false;
  bool self_closing = false;
};

// Yields element tags in document order, skipping comments, processing
// instructions, doctype and CDATA.
class TagScanner {
 public:
  explicit TagScanner(std::string_view xml) : xml_(xml) {}

  std::optional<Tag> next() {
    while (true) {
      const std::size_t open = xml_.find('<', pos_);
      if (open == std::string_view::npos) return std::nullopt;
      pos_ = open;
      if (starts_with("<!--")) {
        skip_past("-->");
      } else if (starts_with("<![CDATA[")) {
        skip_past("]]>");
      } else if (starts_with("<?")) {
        skip_past("?>");
      } else if (starts_with("<!")) {
        skip_past(">");
      } else {
        return read_tag();
      }
    }
  }

 private:
  bool starts_with(std::string_view s) const { return xml_.substr(pos_, s.size()) == s; }

  void skip_past(std::string_view terminator) {
    const std::size_t end = xml_.find(terminator, pos_);
    if (end == std::string_view::npos) throw SvgError("unterminated markup in SVG document");
    pos_ = end + terminator.size();
  }

  Tag read_tag() {
    Tag tag;
    ++pos_;
    if (pos_ < xml_.size() && xml_[pos_] == '/') {
      tag.closing = true;
      ++pos_;
    }
    tag.name = read_name();
    if (tag.name.empty()) throw SvgError("malformed tag in SVG document");
    while (true) {
      skip_space();
      if (pos_ >= xml_.size()) throw SvgError("unterminated tag <" + tag.name + ">");
      if (xml_[pos_] == '>') {
        ++pos_;
        return tag;
      }
      if (starts_with("/>")) {
        tag.self_closing = true;
        pos_ += 2;
        return tag;
      }
      std::string name = read_name();
      if (name.empty()) throw SvgError("malformed attribute in <" + tag.name + ">");
      skip_space();
      if (pos_ >= xml_.size() || xml_[pos_] != '=') throw SvgError("attribute '" + name + "' has no value");
      ++pos_;
      skip_space();
      if (pos_ >= xml_.size() || (xml_[pos_] != '"' && xml_[pos_] != '\'')) {
        throw SvgError("attribute '" + name + "' value is not quoted");
      }
      const char quote = xml_[pos_++];
      const std::size_t end = xml_.find(quote, pos_);
      if (end == std::string_view::npos) throw SvgError("unterminated attribute '" + name + "'");
      tag.attributes[name] = decode_entities(xml_.substr(pos_, end - pos_));
      pos_ = end + 1;
    }
  }

  std::string read_name() {
    const std::size_t begin = pos_;
    while (pos_ < xml_.size() && !is_space(xml_[pos_]) && xml_[pos_] != '>' && xml_[pos_] != '/' &&
           xml_[pos_] != '=') {
      ++pos_;
    }
    return std::string(xml_.substr(begin, pos_ - begin));
  }

  void skip_space() {
    while (pos_ < xml_.size() && is_space(xml_[pos_])) ++pos_;
  }

  std::string_view xml_;
  std::size_t pos_ = 0;
};

// Strips an XML namespace prefix ("svg:path" -> "path").
std::string_view local_name(std::string_view name) {
  const std::size_t colon = name.find(':');
  return colon == std::string_view::npos ? name : name.substr(colon + 1);
}

double parse_length(const std::string& text, const char* what) {
  std::string_view s = text;
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  if (s.size() > 2 && s.substr(s.size() - 2) == "px") s.remove_suffix(2);
  double value = 0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || end != s.data() + s.size() || !(value > 0)) {
    throw SvgError(std::string("unsupported SVG ") + what + " '" + text + "'");
  }
  return value;
}

// Sum of the translate() terms in a transform list.
Point2 parse_translate(const std::string& text) {
  Point2 total{};
  std::string_view s = text;
  while (true) {
    while (!s.empty() && (is_space(s.front()) || s.front() == ',')) s.remove_prefix(1);
    if (s.empty()) return total;
    if (s.substr(0, 9) != "translate") throw SvgError("only translate() transforms are supported: '" + text + "'");
    s.remove_prefix(9);
    while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
    if (s.empty() || s.front() != '(') throw SvgError("malformed transform '" + text + "'");
    const std::size_t close = s.find(')');
    if (close == std::string_view::npos) throw SvgError("malformed transform '" + text + "'");
    std::string_view args = s.substr(1, close - 1);
    double values[2] = {0, 0};
    int count = 0;
    while (true) {
      while (!args.empty() && (is_space(args.front()) || args.front() == ',')) args.remove_prefix(1);
      if (args.empty()) break;
      if (count == 2) throw SvgError("malformed transform '" + text + "'");
      const auto [end, ec] = std::from_chars(args.data(), args.data() + args.size(), values[count]);
      if (ec != std::errc()) throw SvgError("malformed transform '" + text + "'");
      args.remove_prefix(static_cast<std::size_t>(end - args.data()));
      ++count;
    }
    if (count == 0) throw SvgError("malformed transform '" + text + "'");
    total = total + Point2{values[0], values[1]};
    s.remove_prefix(close + 1);
  }
}

std::optional<std::string> style_property(const Tag& tag, const std::string& property) {
  if (auto it = tag.attributes.find(property); it != tag.attributes.end()) return it->second;
  const auto style = tag.attributes.find("style");
  if (style == tag.attributes.end()) return std::nullopt;
  std::string_view s = style->second;
  while (!s.empty()) {
    const std::size_t semi = s.find(';');
    std::string_view decl = s.substr(0, semi);
    s = semi == std::string_view::npos ? std::string_view{} : s.substr(semi + 1);
    const std::size_t colon = decl.find(':');
    if (colon == std::string_view::npos) continue;
    std::string_view key = decl.substr(0, colon);
    std::string_view value = decl.substr(colon + 1);
    while (!key.empty() && is_space(key.front())) key.remove_prefix(1);
    while (!key.empty() && is_space(key.back())) key.remove_suffix(1);
    while (!value.empty() && is_space(value.front())) value.remove_prefix(1);
    while (!value.empty() && is_space(value.back())) value.remove_suffix(1);
    if (key == property) return std::string(value);
  }
  return std::nullopt;
}

bool is_hidden_container(std::string_view name) {
  return name == "defs" || name == "clipPath" || name == "mask" || name == "symbol" || name == "pattern";
}

}  // namespace

SvgDocument parse_svg_document(std::string_view xml) {
  SvgDocument doc;
  TagScanner scanner(xml);
  bool saw_root = false;
  bool saw_fill_rule = false;
  std::vector<Point2> offsets{{0, 0}};
  std::vector<std::string> open;
  int hidden_depth = 0;

  while (std::optional<Tag> tag = scanner.next()) {
    const std::string name(local_name(tag->name));
    if (tag->closing) {
      if (open.empty() || open.back() != name) throw SvgError("mismatched closing tag </" + name + ">");
      open.pop_back();
      if (name == "g" || name == "svg") offsets.pop_back();
      if (hidden_depth > 0 && is_hidden_container(name)) --hidden_depth;
      continue;
    }

    if (!saw_root) {
      if (name != "svg") throw SvgError("document root is not <svg>");
      saw_root = true;
      const auto w = tag->attributes.find("width");
      const auto h = tag->attributes.find("height");
      if (w != tag->attributes.end() && h != tag->attributes.end()) {
        doc.width = parse_length(w->second, "width");
        doc.height = parse_length(h->second, "height");
      } else if (auto vb = tag->attributes.find("viewBox"); vb != tag->attributes.end()) {
        std::string box = vb->second;
        for (char& c : box) {
          if (c == ',') c = ' ';
        }
        double values[4] = {};
        std::string_view s = box;
        for (double& v : values) {
          while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
          const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
          if (ec != std::errc()) throw SvgError("malformed viewBox '" + vb->second + "'");
          s.remove_prefix(static_cast<std::size_t>(end - s.data()));
        }
        doc.width = values[2];
        doc.height = values[3];
      }
      if (!(doc.width > 0) || !(doc.height > 0)) throw SvgError("SVG document has no usable width/height");
    }

    Point2 offset = offsets.back();
    if (auto t = tag->attributes.find("transform"); t != tag->attributes.end()) {
      offset = offset + parse_translate(t->second);
    }
    if (is_hidden_container(name) && !tag->self_closing) ++hidden_depth;

    if (name == "path" && hidden_depth == 0) {
      const auto d = tag->attributes.find("d");
      const std::optional<std::string> fill = style_property(*tag, "fill");
      if (d != tag->attributes.end() && fill != "none") {
        for (const Contour& c : parse_svg_path(d->second)) doc.contours.push_back(c.translated(offset));
        if (!saw_fill_rule) {
          doc.fill_rule = style_property(*tag, "fill-rule") == "evenodd" ? FillRule::evenodd : FillRule::nonzero;
          saw_fill_rule = true;
        }
      }
    }

    if (!tag->self_closing) {
      open.push_back(name);
      if (name == "g" || name == "svg") offsets.push_back(offset);
    }
  }
  if (!saw_root) throw SvgError("document has no <svg> element");
  return doc;
}

SvgDocument load_svg_document(const std::filesystem::path& path) {
  const std::vector<std::uint8_t> bytes = read_file(path);
  return parse_svg_document(std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
}

}  // namespace typotex
