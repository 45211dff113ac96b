#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace milnorlab {

struct SvgCloud {
  std::string label;
  std::vector<std::vector<double>> points;
};

// Static SVG 1.1 scatter plot: one color per cloud from a fixed palette,
// framed axes with tick labels, a legend, deterministic bytes. `projection`
// picks two coordinate indices directly, or three for an orthographic
// cabinet projection onto the first two. Throws when an index is out of
// range for any point.
std::string render_scatter(const std::vector<SvgCloud>& clouds,
                           const std::vector<std::size_t>& projection);

}  // namespace milnorlab
