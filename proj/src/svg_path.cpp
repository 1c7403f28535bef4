#include "typotex/svg_path.hpp"

#include <charconv>
#include <optional>

#include "typotex/errors.hpp"

namespace typotex {
namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

class PathParser {
 public:
  explicit PathParser(std::string_view d) : d_(d) {}

  std::vector<Contour> parse() {
    skip_space();
    if (at_end()) return {};
    if (d_[pos_] != 'M' && d_[pos_] != 'm') {
      fail("path data must begin with a moveto", pos_, true);
    }
    while (true) {
      skip_space();
      if (at_end()) break;
      const char cmd = d_[pos_];
      const std::size_t cmd_offset = pos_;
      ++pos_;
      dispatch(cmd, cmd_offset);
    }
    finish_subpath();
    return std::move(contours_);
  }

 private:
  void dispatch(char cmd, std::size_t offset) {
    const bool rel = cmd >= 'a' && cmd <= 'z';
    switch (cmd) {
      case 'M':
      case 'm': {
        Point2 p = read_point(rel);
        finish_subpath();
        start_ = cur_ = p;
        // Further coordinate pairs after a moveto are implicit linetos.
        while (number_follows()) line_to(read_point(rel));
        reset_reflection();
        break;
      }
      case 'L':
      case 'l':
        do {
          line_to(read_point(rel));
        } while (number_follows());
        reset_reflection();
        break;
      case 'H':
      case 'h':
        do {
          const double x = read_number();
          line_to({rel ? cur_.x + x : x, cur_.y});
        } while (number_follows());
        reset_reflection();
        break;
      case 'V':
      case 'v':
        do {
          const double y = read_number();
          line_to({cur_.x, rel ? cur_.y + y : y});
        } while (number_follows());
        reset_reflection();
        break;
      case 'C':
      case 'c':
        do {
          const Point2 base = cur_;
          const Point2 c1 = offset_point(read_raw_point(), base, rel);
          const Point2 c2 = offset_point(read_raw_point(), base, rel);
          const Point2 p3 = offset_point(read_raw_point(), base, rel);
          cubic_to(c1, c2, p3);
        } while (number_follows());
        break;
      case 'S':
      case 's':
        do {
          const Point2 base = cur_;
          const Point2 c1 = last_cubic_c2_ ? cur_ + (cur_ - *last_cubic_c2_) : cur_;
          const Point2 c2 = offset_point(read_raw_point(), base, rel);
          const Point2 p3 = offset_point(read_raw_point(), base, rel);
          cubic_to(c1, c2, p3);
        } while (number_follows());
        break;
      case 'Q':
      case 'q':
        do {
          const Point2 base = cur_;
          const Point2 q = offset_point(read_raw_point(), base, rel);
          const Point2 p2 = offset_point(read_raw_point(), base, rel);
          quad_to(q, p2);
        } while (number_follows());
        break;
      case 'T':
      case 't':
        do {
          const Point2 q = last_quad_control_ ? cur_ + (cur_ - *last_quad_control_) : cur_;
          const Point2 p2 = offset_point(read_raw_point(), cur_, rel);
          quad_to(q, p2);
        } while (number_follows());
        break;
      case 'Z':
      case 'z':
        finish_subpath();
        cur_ = start_;
        reset_reflection();
        break;
      case 'A':
      case 'a':
        throw UnsupportedCommand("elliptical arc commands are not supported", offset,
                                 std::string(1, cmd));
      default:
        if (is_digit(cmd) || cmd == '.' || cmd == '-' || cmd == '+') {
          fail("expected a command", offset, false);
        }
        fail("unknown path command", offset, true);
    }
  }

  void line_to(Point2 p) {
    segments_.push_back(CubicSegment::line(cur_, p));
    cur_ = p;
  }

  void cubic_to(Point2 c1, Point2 c2, Point2 p3) {
    segments_.push_back({cur_, c1, c2, p3});
    cur_ = p3;
    last_cubic_c2_ = c2;
    last_quad_control_.reset();
  }

  void quad_to(Point2 q, Point2 p2) {
    segments_.push_back(normalize_to_cubics({cur_, q, p2}));
    cur_ = p2;
    last_quad_control_ = q;
    last_cubic_c2_.reset();
  }

  void reset_reflection() {
    last_cubic_c2_.reset();
    last_quad_control_.reset();
  }

  void finish_subpath() {
    if (segments_.empty()) return;
    if (distance(cur_, start_) > kClosureTolerance) {
      segments_.push_back(CubicSegment::line(cur_, start_));
    }
    contours_.emplace_back(std::move(segments_));
    segments_.clear();
  }

  static Point2 offset_point(Point2 p, Point2 base, bool rel) { return rel ? p + base : p; }

  Point2 read_point(bool rel) { return offset_point(read_raw_point(), cur_, rel); }

  Point2 read_raw_point() {
    const double x = read_number();
    const double y = read_number();
    return {x, y};
  }

  bool at_end() const { return pos_ >= d_.size(); }

  void skip_space() {
    while (!at_end() && is_space(d_[pos_])) ++pos_;
  }

  void skip_separator() {
    skip_space();
    if (!at_end() && d_[pos_] == ',') {
      ++pos_;
      skip_space();
    }
  }

  bool number_follows() {
    skip_separator();
    if (at_end()) return false;
    const char c = d_[pos_];
    return is_digit(c) || c == '.' || c == '-' || c == '+';
  }

  double read_number() {
    skip_separator();
    const std::size_t begin = pos_;
    std::size_t i = pos_;
    if (i < d_.size() && (d_[i] == '+' || d_[i] == '-')) ++i;
    std::size_t digits = 0;
    while (i < d_.size() && is_digit(d_[i])) ++i, ++digits;
    if (i < d_.size() && d_[i] == '.') {
      ++i;
      while (i < d_.size() && is_digit(d_[i])) ++i, ++digits;
    }
    if (digits == 0) fail("expected a number", begin, false);
    if (i < d_.size() && (d_[i] == 'e' || d_[i] == 'E')) {
      std::size_t j = i + 1;
      if (j < d_.size() && (d_[j] == '+' || d_[j] == '-')) ++j;
      if (j < d_.size() && is_digit(d_[j])) {
        while (j < d_.size() && is_digit(d_[j])) ++j;
        i = j;
      }
    }
    // from_chars rejects a leading '+'.
    const std::size_t parse_from = d_[begin] == '+' ? begin + 1 : begin;
    double value = 0.0;
    const auto [end, ec] = std::from_chars(d_.data() + parse_from, d_.data() + i, value);
    if (ec != std::errc() || end != d_.data() + i) fail("malformed number", begin, false);
    pos_ = i;
    return value;
  }

  [[noreturn]] void fail(const std::string& what, std::size_t offset, bool single_char) const {
    std::string token;
    if (offset < d_.size()) {
      if (single_char) {
        token = d_.substr(offset, 1);
      } else {
        std::size_t end = offset;
        while (end < d_.size() && !is_space(d_[end]) && d_[end] != ',' && end - offset < 16) ++end;
        token = d_.substr(offset, std::max<std::size_t>(end - offset, 1));
      }
    }
    throw ParseError(what, offset, std::move(token));
  }

  std::string_view d_;
  std::size_t pos_ = 0;
  Point2 cur_{};
  Point2 start_{};
  std::optional<Point2> last_cubic_c2_;
  std::optional<Point2> last_quad_control_;
  std::vector<CubicSegment> segments_;
  std::vector<Contour> contours_;
};

void append_number(std::string& out, double v) {
  char buf[32];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, end);
}

void append_point(std::string& out, Point2 p) {
  out.push_back(' ');
  append_number(out, p.x);
  out.push_back(' ');
  append_number(out, p.y);
}

}  // namespace

std::vector<Contour> parse_svg_path(std::string_view d) { return PathParser(d).parse(); }

std::string to_path_data(const std::vector<Contour>& contours) {
  std::string out;
  for (const Contour& contour : contours) {
    if (contour.empty()) continue;
    if (!out.empty()) out.push_back(' ');
    out.push_back('M');
    append_point(out, contour.segments().front().p0);
    for (const CubicSegment& seg : contour.segments()) {
      out.append(" C");
      append_point(out, seg.c1);
      append_point(out, seg.c2);
      append_point(out, seg.p3);
    }
    out.append(" Z");
  }
  return out;
}

}  // namespace typotex
