#pragma once

#include <filesystem>
#include <string_view>
#include <vector>

#include "typotex/geometry.hpp"
#include "typotex/raster.hpp"

namespace typotex {

/// The drawable subset of an SVG document: filled `path` elements, with
/// `translate` transforms on the path or enclosing `g` elements applied.
/// Content of defs, clipPath, mask, symbol and pattern is skipped.
struct SvgDocument {
  double width = 0;
  double height = 0;
  std::vector<Contour> contours;
  /// Rule requested by the first filled path (fill-rule attribute or style).
  FillRule fill_rule = FillRule::nonzero;
};

/// Throws SvgError for structural problems (missing root, unsupported
/// transforms or units) and ParseError from the path grammar.
SvgDocument parse_svg_document(std::string_view xml);

SvgDocument load_svg_document(const std::filesystem::path& path);

}  // namespace typotex
