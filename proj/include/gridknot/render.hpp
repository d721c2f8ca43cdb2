#pragma once

#include <string>

#include "gridknot/grid.hpp"

namespace gridknot {

// Text picture, rows printed top to bottom. Cell glyphs: X and O for markers,
// '*' for a coincident pair, '+' where a vertical strand crosses a horizontal
// one, '|' and '-' for a single passing strand, '.' for an empty cell. Odd
// character columns carry '-' where a horizontal strand bridges two cells.
// The empty diagram renders as an empty string.
std::string render_ascii(const GridDiagram& d);

// Standalone SVG. Cells are 40 units wide; horizontal strands break 8 units
// around each crossing so the vertical strand reads as the overstrand.
// Coincident pairs draw as a small filled circle.
std::string render_svg(const GridDiagram& d);

}  // namespace gridknot
