#pragma once

#include <string>

#include "gridknot/grid.hpp"

namespace gridknot {

// Canonical text form:
//   line 1: grid index n
//   line 2: xs, space separated
//   line 3: os, space separated
// Newline terminated. The empty diagram serializes as "0\n\n\n".
std::string serialize(const GridDiagram& d);

// Accepts the canonical form; extra interior whitespace is tolerated.
// Throws ParseError with line/field context, and NotPermutation/SizeMismatch
// through validation.
GridDiagram parse_grid(const std::string& text);

}  // namespace gridknot
