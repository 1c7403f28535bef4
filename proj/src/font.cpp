#include "typotex/font.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <iterator>
#include <optional>
#include <string>

#include "typotex/errors.hpp"

namespace typotex {
namespace {

// Bounds-checked big-endian view over a byte range.
class Reader {
 public:
  Reader() = default;
  explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::size_t size() const { return bytes_.size(); }

  Reader sub(std::size_t offset, std::size_t length) const {
    check(offset, length);
    return Reader(bytes_.subspan(offset, length));
  }
  Reader from(std::size_t offset) const {
    check(offset, 0);
    return Reader(bytes_.subspan(offset));
  }

  std::uint8_t u8(std::size_t at) const {
    check(at, 1);
    return bytes_[at];
  }
  std::uint16_t u16(std::size_t at) const {
    check(at, 2);
    return static_cast<std::uint16_t>(bytes_[at] << 8 | bytes_[at + 1]);
  }
  std::int16_t i16(std::size_t at) const { return static_cast<std::int16_t>(u16(at)); }
  std::uint32_t u32(std::size_t at) const {
    check(at, 4);
    return static_cast<std::uint32_t>(bytes_[at]) << 24 | static_cast<std::uint32_t>(bytes_[at + 1]) << 16 |
           static_cast<std::uint32_t>(bytes_[at + 2]) << 8 | bytes_[at + 3];
  }
  std::uint32_t offset_n(std::size_t at, unsigned width) const {
    std::uint32_t v = 0;
    for (unsigned i = 0; i < width; ++i) v = v << 8 | u8(at + i);
    return v;
  }

 private:
  void check(std::size_t at, std::size_t length) const {
    if (at > bytes_.size() || length > bytes_.size() - at) {
      throw UnsupportedFont("font data truncated or corrupt");
    }
  }

  std::span<const std::uint8_t> bytes_;
};

constexpr std::uint32_t tag(const char (&s)[5]) {
  return static_cast<std::uint32_t>(s[0]) << 24 | static_cast<std::uint32_t>(s[1]) << 16 |
         static_cast<std::uint32_t>(s[2]) << 8 | static_cast<std::uint32_t>(s[3]);
}

// Accumulates contours in font units.
class PathSink {
 public:
  void move_to(Point2 p) {
    close();
    start_ = current_ = p;
    open_ = true;
  }
  void line_to(Point2 p) {
    segments_.push_back(CubicSegment::line(current_, p));
    current_ = p;
  }
  void quad_to(Point2 q, Point2 p) {
    segments_.push_back(normalize_to_cubics({current_, q, p}));
    current_ = p;
  }
  void cubic_to(Point2 c1, Point2 c2, Point2 p) {
    segments_.push_back({current_, c1, c2, p});
    current_ = p;
  }
  void close() {
    if (open_ && !segments_.empty()) {
      if (current_ != start_) line_to(start_);
      segments_.back().p3 = start_;
      contours_.emplace_back(std::move(segments_));
    }
    segments_.clear();
    open_ = false;
  }
  Point2 current() const { return current_; }
  std::vector<Contour> take() {
    close();
    return std::move(contours_);
  }

 private:
  Point2 start_{};
  Point2 current_{};
  bool open_ = false;
  std::vector<CubicSegment> segments_;
  std::vector<Contour> contours_;
};

// ---------------------------------------------------------------- cmap

struct CharMap {
  Reader table;
  int format = 0;

  std::uint32_t lookup(char32_t cp) const {
    if (format == 4) return lookup_format4(cp);
    if (format == 12) return lookup_format12(cp);
    if (format == 6) return lookup_format6(cp);
    return 0;
  }

 private:
  std::uint32_t lookup_format4(char32_t cp) const {
    if (cp > 0xFFFF) return 0;
    const unsigned seg_count = table.u16(6) / 2u;
    const std::size_t ends = 14;
    const std::size_t starts = ends + 2 * seg_count + 2;
    const std::size_t deltas = starts + 2 * seg_count;
    const std::size_t range_offsets = deltas + 2 * seg_count;
    for (unsigned i = 0; i < seg_count; ++i) {
      if (cp > table.u16(ends + 2 * i)) continue;
      const std::uint16_t start = table.u16(starts + 2 * i);
      if (cp < start) return 0;
      const std::uint16_t delta = table.u16(deltas + 2 * i);
      const std::uint16_t range_offset = table.u16(range_offsets + 2 * i);
      if (range_offset == 0) return static_cast<std::uint16_t>(cp + delta);
      const std::size_t at = range_offsets + 2 * i + range_offset + 2 * (cp - start);
      const std::uint16_t glyph = table.u16(at);
      return glyph == 0 ? 0 : static_cast<std::uint16_t>(glyph + delta);
    }
    return 0;
  }

  std::uint32_t lookup_format6(char32_t cp) const {
    const std::uint16_t first = table.u16(6);
    const std::uint16_t count = table.u16(8);
    if (cp < first || cp >= static_cast<char32_t>(first) + count) return 0;
    return table.u16(10 + 2 * (cp - first));
  }

  std::uint32_t lookup_format12(char32_t cp) const {
    const std::uint32_t groups = table.u32(12);
    std::uint32_t lo = 0;
    std::uint32_t hi = groups;
    while (lo < hi) {
      const std::uint32_t mid = (lo + hi) / 2;
      const std::size_t at = 16 + 12 * static_cast<std::size_t>(mid);
      const std::uint32_t start = table.u32(at);
      const std::uint32_t end = table.u32(at + 4);
      if (cp < start) {
        hi = mid;
      } else if (cp > end) {
        lo = mid + 1;
      } else {
        return table.u32(at + 8) + (cp - start);
      }
    }
    return 0;
  }
};

CharMap read_cmap(Reader cmap) {
  const std::uint16_t count = cmap.u16(2);
  std::optional<CharMap> best;
  int best_rank = -1;
  for (std::uint16_t i = 0; i < count; ++i) {
    const std::size_t rec = 4 + 8 * static_cast<std::size_t>(i);
    const std::uint16_t platform = cmap.u16(rec);
    const std::uint16_t encoding = cmap.u16(rec + 2);
    const Reader sub = cmap.from(cmap.u32(rec + 4));
    const int format = sub.u16(0);
    if (format != 4 && format != 6 && format != 12) continue;
    const bool unicode = platform == 0 || (platform == 3 && (encoding == 1 || encoding == 10));
    if (!unicode) continue;
    const int rank = (format == 12 ? 2 : 0) + (platform == 3 ? 1 : 0);
    if (rank > best_rank) {
      best_rank = rank;
      best = CharMap{sub, format};
    }
  }
  if (!best) throw UnsupportedFont("font has no Unicode character map");
  return *best;
}

// ---------------------------------------------------------------- glyf

struct TrueTypeOutlines {
  Reader glyf;
  Reader loca;
  bool long_offsets = false;
  std::uint32_t num_glyphs = 0;

  std::optional<Reader> glyph_data(std::uint32_t glyph) const {
    if (glyph >= num_glyphs) return std::nullopt;
    std::uint32_t begin = 0;
    std::uint32_t end = 0;
    if (long_offsets) {
      begin = loca.u32(4 * static_cast<std::size_t>(glyph));
      end = loca.u32(4 * static_cast<std::size_t>(glyph) + 4);
    } else {
      begin = 2u * loca.u16(2 * static_cast<std::size_t>(glyph));
      end = 2u * loca.u16(2 * static_cast<std::size_t>(glyph) + 2);
    }
    if (end <= begin) return std::nullopt;
    return glyf.sub(begin, end - begin);
  }

  // 2x3 affine transform applied to component outlines.
  struct Affine {
    double a = 1, b = 0, c = 0, d = 1, e = 0, f = 0;
    Point2 apply(Point2 p) const { return {a * p.x + c * p.y + e, b * p.x + d * p.y + f}; }
    Affine then(const Affine& outer) const {
      return {outer.a * a + outer.c * b, outer.b * a + outer.d * b, outer.a * c + outer.c * d,
              outer.b * c + outer.d * d, outer.a * e + outer.c * f + outer.e,
              outer.b * e + outer.d * f + outer.f};
    }
  };

  void draw(std::uint32_t glyph, PathSink& sink, const Affine& xf, int depth) const {
    if (depth > 8) throw UnsupportedFont("composite glyph nesting too deep");
    const std::optional<Reader> data = glyph_data(glyph);
    if (!data) return;
    const std::int16_t contour_count = data->i16(0);
    if (contour_count >= 0) {
      draw_simple(*data, contour_count, sink, xf);
    } else {
      draw_composite(*data, sink, xf, depth);
    }
  }

  static void draw_simple(const Reader& g, int contour_count, PathSink& sink, const Affine& xf) {
    if (contour_count == 0) return;
    std::vector<std::uint16_t> end_points(contour_count);
    for (int i = 0; i < contour_count; ++i) end_points[i] = g.u16(10 + 2 * static_cast<std::size_t>(i));
    const std::size_t point_count = static_cast<std::size_t>(end_points.back()) + 1;
    const std::size_t instructions = 10 + 2 * static_cast<std::size_t>(contour_count);
    std::size_t at = instructions + 2 + g.u16(instructions);

    std::vector<std::uint8_t> flags;
    flags.reserve(point_count);
    while (flags.size() < point_count) {
      const std::uint8_t flag = g.u8(at++);
      flags.push_back(flag);
      if (flag & 0x08) {
        for (unsigned repeat = g.u8(at++); repeat > 0 && flags.size() < point_count; --repeat) {
          flags.push_back(flag);
        }
      }
    }

    std::vector<Point2> points(point_count);
    auto read_axis = [&](std::uint8_t short_bit, std::uint8_t same_bit, bool is_x) {
      double value = 0;
      for (std::size_t i = 0; i < point_count; ++i) {
        const std::uint8_t flag = flags[i];
        if (flag & short_bit) {
          const double delta = g.u8(at++);
          value += (flag & same_bit) ? delta : -delta;
        } else if (!(flag & same_bit)) {
          value += g.i16(at);
          at += 2;
        }
        (is_x ? points[i].x : points[i].y) = value;
      }
    };
    read_axis(0x02, 0x10, true);
    read_axis(0x04, 0x20, false);

    std::size_t first = 0;
    for (const std::uint16_t last : end_points) {
      if (last < first || last >= point_count) throw UnsupportedFont("bad contour end point");
      emit_contour(std::span(points).subspan(first, last - first + 1),
                   std::span(flags).subspan(first, last - first + 1), sink, xf);
      first = static_cast<std::size_t>(last) + 1;
    }
  }

  // Walks one quadratic contour, inserting the implied on-curve midpoints
  // between consecutive off-curve points.
  static void emit_contour(std::span<const Point2> pts, std::span<const std::uint8_t> flags, PathSink& sink,
                           const Affine& xf) {
    const std::size_t n = pts.size();
    if (n < 2) return;
    auto on_curve = [&](std::size_t i) { return (flags[i % n] & 0x01) != 0; };
    auto point = [&](std::size_t i) { return xf.apply(pts[i % n]); };

    std::size_t begin = 0;
    while (begin < n && !on_curve(begin)) ++begin;
    Point2 start;
    if (begin == n) {
      // All off-curve: start at the implied point between the first two.
      start = lerp(point(0), point(1), 0.5);
      begin = 1;
    } else {
      start = point(begin);
      begin += 1;
    }
    sink.move_to(start);
    std::optional<Point2> control;
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t i = begin + k;
      const Point2 p = point(i);
      if (on_curve(i)) {
        if (control) {
          sink.quad_to(*control, p);
          control.reset();
        } else {
          sink.line_to(p);
        }
      } else {
        if (control) sink.quad_to(*control, lerp(*control, p, 0.5));
        control = p;
      }
    }
    if (control) sink.quad_to(*control, start);
    sink.close();
  }

  void draw_composite(const Reader& g, PathSink& sink, const Affine& xf, int depth) const {
    constexpr std::uint16_t kArgsAreWords = 0x0001;
    constexpr std::uint16_t kArgsAreXY = 0x0002;
    constexpr std::uint16_t kHaveScale = 0x0008;
    constexpr std::uint16_t kMoreComponents = 0x0020;
    constexpr std::uint16_t kHaveXYScale = 0x0040;
    constexpr std::uint16_t kHaveTwoByTwo = 0x0080;
    auto f2dot14 = [&](std::size_t at) { return g.i16(at) / 16384.0; };

    std::size_t at = 10;
    std::uint16_t flags = 0;
    do {
      flags = g.u16(at);
      const std::uint16_t component = g.u16(at + 2);
      at += 4;
      double dx = 0;
      double dy = 0;
      if (flags & kArgsAreWords) {
        dx = g.i16(at);
        dy = g.i16(at + 2);
        at += 4;
      } else {
        dx = static_cast<std::int8_t>(g.u8(at));
        dy = static_cast<std::int8_t>(g.u8(at + 1));
        at += 2;
      }
      // Point-matched placement is rare; such components are drawn unshifted.
      if (!(flags & kArgsAreXY)) dx = dy = 0;
      Affine local;
      if (flags & kHaveScale) {
        local.a = local.d = f2dot14(at);
        at += 2;
      } else if (flags & kHaveXYScale) {
        local.a = f2dot14(at);
        local.d = f2dot14(at + 2);
        at += 4;
      } else if (flags & kHaveTwoByTwo) {
        local.a = f2dot14(at);
        local.b = f2dot14(at + 2);
        local.c = f2dot14(at + 4);
        local.d = f2dot14(at + 6);
        at += 8;
      }
      local.e = dx;
      local.f = dy;
      draw(component, sink, local.then(xf), depth + 1);
    } while (flags & kMoreComponents);
  }
};

// ---------------------------------------------------------------- CFF

struct CffIndex {
  Reader data;
  std::uint32_t count = 0;
  unsigned off_size = 0;
  std::size_t offsets_at = 0;
  std::size_t data_at = 0;
  std::size_t total_size = 2;

  static CffIndex read(const Reader& r, std::size_t at) {
    CffIndex idx;
    idx.data = r;
    idx.count = r.u16(at);
    if (idx.count == 0) {
      idx.total_size = 2;
      return idx;
    }
    idx.off_size = r.u8(at + 2);
    if (idx.off_size < 1 || idx.off_size > 4) throw UnsupportedFont("bad CFF INDEX offset size");
    idx.offsets_at = at + 3;
    idx.data_at = idx.offsets_at + (idx.count + 1) * static_cast<std::size_t>(idx.off_size) - 1;
    const std::uint32_t last = r.offset_n(idx.offsets_at + idx.count * static_cast<std::size_t>(idx.off_size),
                                          idx.off_size);
    idx.total_size = idx.data_at + last - at;
    return idx;
  }

  Reader item(std::uint32_t i) const {
    if (i >= count) throw UnsupportedFont("CFF INDEX item out of range");
    const std::uint32_t begin = data.offset_n(offsets_at + i * static_cast<std::size_t>(off_size), off_size);
    const std::uint32_t end = data.offset_n(offsets_at + (i + 1) * static_cast<std::size_t>(off_size), off_size);
    if (begin < 1 || end < begin) throw UnsupportedFont("bad CFF INDEX offsets");
    return data.sub(data_at + begin, end - begin);
  }
};

// Operands of one DICT operator, keyed by operator (escaped ops get 1200+).
class CffDict {
 public:
  explicit CffDict(const Reader& r) {
    std::vector<double> operands;
    std::size_t at = 0;
    while (at < r.size()) {
      const std::uint8_t b0 = r.u8(at);
      if (b0 <= 21) {
        int op = b0;
        ++at;
        if (b0 == 12) op = 1200 + r.u8(at++);
        entries_.push_back({op, operands});
        operands.clear();
      } else if (b0 == 28) {
        operands.push_back(r.i16(at + 1));
        at += 3;
      } else if (b0 == 29) {
        operands.push_back(static_cast<std::int32_t>(r.u32(at + 1)));
        at += 5;
      } else if (b0 == 30) {
        at = skip_real(r, at + 1);
        operands.push_back(0.0);
      } else if (b0 >= 32 && b0 <= 246) {
        operands.push_back(b0 - 139);
        ++at;
      } else if (b0 >= 247 && b0 <= 250) {
        operands.push_back((b0 - 247) * 256 + r.u8(at + 1) + 108);
        at += 2;
      } else if (b0 >= 251 && b0 <= 254) {
        operands.push_back(-(b0 - 251) * 256 - r.u8(at + 1) - 108);
        at += 2;
      } else {
        throw UnsupportedFont("bad CFF DICT byte");
      }
    }
  }

  const std::vector<double>* find(int op) const {
    for (const auto& e : entries_) {
      if (e.op == op) return &e.operands;
    }
    return nullptr;
  }

 private:
  // Real values only appear in keys this reader ignores (FontMatrix etc.).
  static std::size_t skip_real(const Reader& r, std::size_t at) {
    while (true) {
      const std::uint8_t b = r.u8(at++);
      if ((b & 0x0F) == 0x0F || (b >> 4) == 0x0F) return at;
    }
  }

  struct Entry {
    int op;
    std::vector<double> operands;
  };
  std::vector<Entry> entries_;
};

constexpr int kOpCharStrings = 17;
constexpr int kOpPrivate = 18;
constexpr int kOpSubrs = 19;
constexpr int kOpCharstringType = 1206;
constexpr int kOpRos = 1230;
constexpr int kOpFdArray = 1236;
constexpr int kOpFdSelect = 1237;

struct CffOutlines {
  Reader cff;
  CffIndex global_subrs;
  CffIndex charstrings;
  std::vector<CffIndex> local_subrs;  // one per font DICT
  std::optional<std::size_t> fd_select;

  static CffOutlines read(const Reader& cff) {
    CffOutlines out;
    out.cff = cff;
    const std::size_t header_size = cff.u8(2);
    const CffIndex names = CffIndex::read(cff, header_size);
    const CffIndex top_dicts = CffIndex::read(cff, header_size + names.total_size);
    const CffIndex strings = CffIndex::read(cff, header_size + names.total_size + top_dicts.total_size);
    out.global_subrs =
        CffIndex::read(cff, header_size + names.total_size + top_dicts.total_size + strings.total_size);
    if (top_dicts.count < 1) throw UnsupportedFont("CFF has no top DICT");
    const CffDict top(top_dicts.item(0));

    if (const auto* type = top.find(kOpCharstringType); type && !type->empty() && (*type)[0] != 2) {
      throw UnsupportedFont("only Type 2 charstrings are supported");
    }
    const auto* cs = top.find(kOpCharStrings);
    if (!cs || cs->empty()) throw UnsupportedFont("CFF has no CharStrings");
    out.charstrings = CffIndex::read(cff, static_cast<std::size_t>((*cs)[0]));

    if (top.find(kOpRos)) {
      const auto* fd_array = top.find(kOpFdArray);
      const auto* fd_select = top.find(kOpFdSelect);
      if (!fd_array || !fd_select || fd_array->empty() || fd_select->empty()) {
        throw UnsupportedFont("CID-keyed CFF without FDArray/FDSelect");
      }
      const CffIndex fds = CffIndex::read(cff, static_cast<std::size_t>((*fd_array)[0]));
      for (std::uint32_t i = 0; i < fds.count; ++i) out.local_subrs.push_back(out.private_subrs(CffDict(fds.item(i))));
      out.fd_select = static_cast<std::size_t>((*fd_select)[0]);
    } else {
      out.local_subrs.push_back(out.private_subrs(top));
    }
    return out;
  }

  CffIndex private_subrs(const CffDict& dict) const {
    const auto* priv = dict.find(kOpPrivate);
    if (!priv || priv->size() < 2) return {};
    const auto size = static_cast<std::size_t>((*priv)[0]);
    const auto offset = static_cast<std::size_t>((*priv)[1]);
    const CffDict private_dict(cff.sub(offset, size));
    const auto* subrs = private_dict.find(kOpSubrs);
    if (!subrs || subrs->empty()) return {};
    return CffIndex::read(cff, offset + static_cast<std::size_t>((*subrs)[0]));
  }

  std::size_t font_dict_for(std::uint32_t glyph) const {
    if (!fd_select) return 0;
    const std::size_t at = *fd_select;
    const std::uint8_t format = cff.u8(at);
    if (format == 0) return cff.u8(at + 1 + glyph);
    if (format == 3) {
      const std::uint16_t ranges = cff.u16(at + 1);
      for (std::uint16_t i = 0; i < ranges; ++i) {
        const std::size_t rec = at + 3 + 3 * static_cast<std::size_t>(i);
        const std::uint16_t first = cff.u16(rec);
        const std::uint16_t next = cff.u16(rec + 3);
        if (glyph >= first && glyph < next) return cff.u8(rec + 2);
      }
    }
    throw UnsupportedFont("unsupported FDSelect format");
  }

  void draw(std::uint32_t glyph, PathSink& sink) const {
    if (glyph >= charstrings.count) return;
    const std::size_t fd = font_dict_for(glyph);
    if (fd >= local_subrs.size()) throw UnsupportedFont("FDSelect index out of range");
    Type2Interpreter interp{*this, local_subrs[fd], sink};
    interp.run(charstrings.item(glyph), 0);
    sink.close();
  }

  struct Type2Interpreter {
    const CffOutlines& font;
    const CffIndex& local;
    PathSink& sink;
    std::array<double, 48> stack{};
    std::size_t sp = 0;
    int stems = 0;
    bool width_seen = false;
    bool ended = false;
    Point2 pen{};

    static std::int32_t bias(std::uint32_t count) {
      if (count < 1240) return 107;
      if (count < 33900) return 1131;
      return 32768;
    }

    void push(double v) {
      if (sp >= stack.size()) throw UnsupportedFont("charstring stack overflow");
      stack[sp++] = v;
    }

    // Drops the optional leading width operand of the first stack-clearing operator.
    void take_width(bool has_extra) {
      if (!width_seen && has_extra && sp > 0) {
        for (std::size_t i = 1; i < sp; ++i) stack[i - 1] = stack[i];
        --sp;
      }
      width_seen = true;
    }

    void move(double dx, double dy) {
      pen = {pen.x + dx, pen.y + dy};
      sink.move_to(pen);
    }
    void line(double dx, double dy) {
      pen = {pen.x + dx, pen.y + dy};
      sink.line_to(pen);
    }
    void curve(double dx1, double dy1, double dx2, double dy2, double dx3, double dy3) {
      const Point2 c1{pen.x + dx1, pen.y + dy1};
      const Point2 c2{c1.x + dx2, c1.y + dy2};
      pen = {c2.x + dx3, c2.y + dy3};
      sink.cubic_to(c1, c2, pen);
    }

    void need(std::size_t n) const {
      if (sp < n) throw UnsupportedFont("charstring stack underflow");
    }

    void run(const Reader& code, int depth) {
      if (depth > 10) throw UnsupportedFont("charstring subroutine nesting too deep");
      std::size_t at = 0;
      while (at < code.size() && !ended) {
        const std::uint8_t b0 = code.u8(at++);
        if (b0 >= 32 || b0 == 28) {
          if (b0 == 28) {
            push(code.i16(at));
            at += 2;
          } else if (b0 <= 246) {
            push(b0 - 139);
          } else if (b0 <= 250) {
            push((b0 - 247) * 256 + code.u8(at++) + 108);
          } else if (b0 <= 254) {
            push(-(b0 - 251) * 256 - code.u8(at++) - 108);
          } else {
            push(static_cast<std::int32_t>(code.u32(at)) / 65536.0);
            at += 4;
          }
          continue;
        }
        switch (b0) {
          case 1:    // hstem
          case 3:    // vstem
          case 18:   // hstemhm
          case 23:   // vstemhm
            take_width(sp % 2 == 1);
            stems += static_cast<int>(sp / 2);
            sp = 0;
            break;
          case 19:  // hintmask
          case 20:  // cntrmask
            take_width(sp % 2 == 1);
            stems += static_cast<int>(sp / 2);
            sp = 0;
            at += static_cast<std::size_t>((stems + 7) / 8);
            break;
          case 21:  // rmoveto
            take_width(sp > 2);
            need(2);
            move(stack[0], stack[1]);
            sp = 0;
            break;
          case 22:  // hmoveto
            take_width(sp > 1);
            need(1);
            move(stack[0], 0);
            sp = 0;
            break;
          case 4:  // vmoveto
            take_width(sp > 1);
            need(1);
            move(0, stack[0]);
            sp = 0;
            break;
          case 5:  // rlineto
            for (std::size_t i = 0; i + 1 < sp; i += 2) line(stack[i], stack[i + 1]);
            sp = 0;
            break;
          case 6:  // hlineto
          case 7:  // vlineto
          {
            bool horizontal = b0 == 6;
            for (std::size_t i = 0; i < sp; ++i, horizontal = !horizontal) {
              horizontal ? line(stack[i], 0) : line(0, stack[i]);
            }
            sp = 0;
            break;
          }
          case 8:  // rrcurveto
            for (std::size_t i = 0; i + 5 < sp; i += 6) {
              curve(stack[i], stack[i + 1], stack[i + 2], stack[i + 3], stack[i + 4], stack[i + 5]);
            }
            sp = 0;
            break;
          case 24:  // rcurveline
          {
            need(8);
            std::size_t i = 0;
            for (; i + 7 < sp; i += 6) {
              curve(stack[i], stack[i + 1], stack[i + 2], stack[i + 3], stack[i + 4], stack[i + 5]);
            }
            line(stack[i], stack[i + 1]);
            sp = 0;
            break;
          }
          case 25:  // rlinecurve
          {
            need(8);
            std::size_t i = 0;
            for (; i + 7 < sp; i += 2) line(stack[i], stack[i + 1]);
            curve(stack[i], stack[i + 1], stack[i + 2], stack[i + 3], stack[i + 4], stack[i + 5]);
            sp = 0;
            break;
          }
          case 26:  // vvcurveto
          case 27:  // hhcurveto
          {
            std::size_t i = 0;
            double first = 0;
            if (sp % 2 == 1) first = stack[i++];
            for (; i + 3 < sp; i += 4) {
              if (b0 == 27) {
                curve(stack[i], first, stack[i + 1], stack[i + 2], stack[i + 3], 0);
              } else {
                curve(first, stack[i], stack[i + 1], stack[i + 2], 0, stack[i + 3]);
              }
              first = 0;
            }
            sp = 0;
            break;
          }
          case 30:  // vhcurveto
          case 31:  // hvcurveto
          {
            bool horizontal = b0 == 31;
            for (std::size_t i = 0; i + 3 < sp; i += 4, horizontal = !horizontal) {
              const double last = sp - i == 5 ? stack[i + 4] : 0.0;
              if (horizontal) {
                curve(stack[i], 0, stack[i + 1], stack[i + 2], last, stack[i + 3]);
              } else {
                curve(0, stack[i], stack[i + 1], stack[i + 2], stack[i + 3], last);
              }
            }
            sp = 0;
            break;
          }
          case 10:  // callsubr
          case 29:  // callgsubr
          {
            need(1);
            const CffIndex& subrs = b0 == 10 ? local : font.global_subrs;
            const auto index = static_cast<std::int64_t>(stack[--sp]) + bias(subrs.count);
            if (index < 0) throw UnsupportedFont("charstring subroutine index out of range");
            run(subrs.item(static_cast<std::uint32_t>(index)), depth + 1);
            break;
          }
          case 11:  // return
            return;
          case 14:  // endchar
            if (!width_seen && (sp == 1 || sp == 5)) take_width(true);
            if (sp >= 4) throw UnsupportedFont("seac-style accented endchar is not supported");
            sink.close();
            ended = true;
            return;
          case 12:
            run_escape(code.u8(at++));
            break;
          default:
            throw UnsupportedFont("unsupported charstring operator " + std::to_string(b0));
        }
      }
    }

    void run_escape(std::uint8_t op) {
      const auto& s = stack;
      switch (op) {
        case 34:  // hflex
          need(7);
          curve(s[0], 0, s[1], s[2], s[3], 0);
          curve(s[4], 0, s[5], -s[2], s[6], 0);
          break;
        case 35:  // flex
          need(13);
          curve(s[0], s[1], s[2], s[3], s[4], s[5]);
          curve(s[6], s[7], s[8], s[9], s[10], s[11]);
          break;
        case 36:  // hflex1
          need(9);
          curve(s[0], s[1], s[2], s[3], s[4], 0);
          curve(s[5], 0, s[6], s[7], s[8], -(s[1] + s[3] + s[7]));
          break;
        case 37:  // flex1
        {
          need(11);
          const double dx = s[0] + s[2] + s[4] + s[6] + s[8];
          const double dy = s[1] + s[3] + s[5] + s[7] + s[9];
          curve(s[0], s[1], s[2], s[3], s[4], s[5]);
          if (std::fabs(dx) > std::fabs(dy)) {
            curve(s[6], s[7], s[8], s[9], s[10], -dy);
          } else {
            curve(s[6], s[7], s[8], s[9], -dx, s[10]);
          }
          break;
        }
        default:
          throw UnsupportedFont("unsupported charstring operator 12 " + std::to_string(op));
      }
      sp = 0;
    }
  };
};

bool is_whitespace(char32_t cp) {
  switch (cp) {
    case U' ':
    case U'\t':
    case U'\n':
    case U'\r':
    case U'\f':
    case U'\v':
    case 0x00A0:
    case 0x1680:
    case 0x2028:
    case 0x2029:
    case 0x202F:
    case 0x205F:
    case 0x3000:
      return true;
    default:
      return cp >= 0x2000 && cp <= 0x200A;
  }
}

}  // namespace

struct Font::Impl {
  std::vector<std::uint8_t> bytes;
  Reader file;
  double units_per_em = 1000;
  std::uint32_t num_glyphs = 0;
  std::uint16_t num_hmetrics = 0;
  Reader hmtx;
  CharMap cmap;
  std::optional<TrueTypeOutlines> truetype;
  std::optional<CffOutlines> cff;

  explicit Impl(std::vector<std::uint8_t> data) : bytes(std::move(data)), file(bytes) {
    if (bytes.size() < 12) throw UnsupportedFont("file too small to be a font");
    std::size_t directory = 0;
    if (file.u32(0) == tag("ttcf")) directory = file.u32(12);
    const std::uint32_t version = file.u32(directory);
    if (version != 0x00010000 && version != tag("true") && version != tag("OTTO")) {
      throw UnsupportedFont("not a TrueType or OpenType font");
    }

    const std::uint16_t table_count = file.u16(directory + 4);
    auto find = [&](std::uint32_t wanted) -> std::optional<Reader> {
      for (std::uint16_t i = 0; i < table_count; ++i) {
        const std::size_t rec = directory + 12 + 16 * static_cast<std::size_t>(i);
        if (file.u32(rec) == wanted) return file.sub(file.u32(rec + 8), file.u32(rec + 12));
      }
      return std::nullopt;
    };
    auto require = [&](std::uint32_t wanted, const char* name) {
      auto t = find(wanted);
      if (!t) throw UnsupportedFont(std::string("font lacks required table '") + name + "'");
      return *t;
    };

    const Reader head = require(tag("head"), "head");
    units_per_em = head.u16(18);
    if (units_per_em <= 0) throw UnsupportedFont("unitsPerEm is zero");
    num_glyphs = require(tag("maxp"), "maxp").u16(4);
    num_hmetrics = require(tag("hhea"), "hhea").u16(34);
    hmtx = require(tag("hmtx"), "hmtx");
    cmap = read_cmap(require(tag("cmap"), "cmap"));

    if (auto glyf = find(tag("glyf"))) {
      truetype = TrueTypeOutlines{*glyf, require(tag("loca"), "loca"), head.i16(50) != 0, num_glyphs};
    } else if (auto table = find(tag("CFF "))) {
      cff = CffOutlines::read(*table);
    } else {
      throw UnsupportedFont("font has neither glyf nor CFF outlines");
    }
  }
};

Font::Font(std::vector<std::uint8_t> data) : impl_(std::make_unique<Impl>(std::move(data))) {}
Font::~Font() = default;
Font::Font(Font&&) noexcept = default;
Font& Font::operator=(Font&&) noexcept = default;

Font Font::from_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileNotFound("cannot open font file '" + path + "'");
  return Font(std::vector<std::uint8_t>(std::istreambuf_iterator<char>(in), {}));
}

double Font::units_per_em() const { return impl_->units_per_em; }
bool Font::is_cff() const { return impl_->cff.has_value(); }

std::uint32_t Font::glyph_index(char32_t codepoint) const {
  const std::uint32_t g = impl_->cmap.lookup(codepoint);
  return g < impl_->num_glyphs ? g : 0;
}

double Font::advance_width(std::uint32_t glyph) const {
  if (impl_->num_hmetrics == 0) return 0;
  const std::uint32_t metric = std::min<std::uint32_t>(glyph, impl_->num_hmetrics - 1u);
  return impl_->hmtx.u16(4 * static_cast<std::size_t>(metric));
}

GlyphOutline Font::outline(char32_t codepoint, double size_px) const {
  const std::uint32_t glyph = glyph_index(codepoint);
  const double scale = size_px / impl_->units_per_em;
  GlyphOutline out;
  out.units_per_em = impl_->units_per_em;
  if (glyph == 0) {
    if (!is_whitespace(codepoint)) throw MissingGlyph(codepoint);
    return out;
  }
  out.advance = advance_width(glyph) * scale;

  PathSink sink;
  if (impl_->truetype) {
    impl_->truetype->draw(glyph, sink, {}, 0);
  } else {
    impl_->cff->draw(glyph, sink);
  }
  for (Contour& contour : sink.take()) out.contours.push_back(contour.scaled(scale, -scale));
  out.bounding_box = control_bounds(out.contours);
  return out;
}

GlyphOutline outline_from_font(std::span<const std::uint8_t> font_bytes, char32_t codepoint, double size_px) {
  return Font(std::vector<std::uint8_t>(font_bytes.begin(), font_bytes.end())).outline(codepoint, size_px);
}

}  // namespace typotex
