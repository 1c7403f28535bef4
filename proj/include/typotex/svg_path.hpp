#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "typotex/geometry.hpp"

namespace typotex {

/// Parses SVG path data (the `d` attribute) into closed cubic contours.
///
/// Supported commands: M/m, L/l, H/h, V/v, C/c, S/s, Q/q, T/t, Z/z. Lines
/// and quadratics are promoted to cubics; open subpaths are closed with a
/// straight edge. A subpath with no drawing commands produces no contour.
///
/// Throws ParseError on malformed input and UnsupportedCommand for the
/// elliptical-arc commands A/a.
std::vector<Contour> parse_svg_path(std::string_view d);

/// Serializes contours as absolute `M ... C ... Z` path data using the
/// shortest round-trip representation of each coordinate, so that
/// parse_svg_path(to_path_data(c)) reproduces `c` exactly.
std::string to_path_data(const std::vector<Contour>& contours);

}  // namespace typotex
