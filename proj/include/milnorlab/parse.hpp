#pragma once

#include <string>
#include <vector>

#include "milnorlab/map_germ.hpp"

namespace milnorlab {

// Parses one polynomial expression over the named variables.
//
//   expr     := term (('+' | '-') term)*
//   term     := factor ('*' factor)*
//   factor   := base ('^' natural)?
//   base     := rational | identifier | '(' expr ')' | '-' base
//   rational := integer ('/' positive-integer)?
//
// Whitespace-insensitive; implicit multiplication is rejected. '/' anywhere
// except inside an integer rational literal raises DivisionByVariable. Error
// positions are 0-based character offsets into `src`.
Poly parse_poly(const std::string& src, const std::vector<std::string>& vars);

// Line-oriented germ file: optional `name:` line, one `vars:` line, one
// `poly:` line per component, `#` comments, UTF-8, LF endings.
MapGerm parse_germ(const std::string& text);

MapGerm load_germ(const std::string& path);

// Canonical rendering; parse_germ(format_germ(g)) reproduces g exactly.
std::string format_germ(const MapGerm& g);

void save_germ(const MapGerm& g, const std::string& path);

}  // namespace milnorlab
