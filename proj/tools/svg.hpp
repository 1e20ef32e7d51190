#pragma once

#include <string>
#include <vector>

#include "rotset/polytope.hpp"

namespace rotset::cli {

/// Static 2D projection onto coordinates (x, y), 0-based: pieces as filled
/// polygons and an optional polyline of running averages.
std::string render_svg(const PolytopeUnion& u, std::size_t x, std::size_t y,
                       const std::vector<std::vector<double>>& averages = {});

}  // namespace rotset::cli
