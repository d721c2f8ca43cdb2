#pragma once

#include <cstdint>
#include <vector>

#include "gridknot/grid.hpp"

namespace gridknot {

// Polygonal link diagrams in the plane and their conversion to grid diagrams.
//
// A PLDiagram is a set of closed polylines with decimal coordinates plus, for
// every transversal double point, a record naming the overstrand. Inputs must
// be generic: crossings are transversal interior points of exactly two
// segments, no vertex lies on another segment, and no two segments overlap
// along a line. Violations raise NonGenericInput.

struct PLPoint {
  double x = 0;
  double y = 0;
};

// components[i] lists the vertices of one closed polyline; segment j of a
// component runs from vertex j to vertex j+1, cyclically.
struct PLOverChoice {
  PLPoint at;  // approximate location of the double point this entry resolves
  int over_component = 0;
  int over_segment = 0;
};

struct PLDiagram {
  std::vector<std::vector<PLPoint>> components;
  std::vector<PLOverChoice> over_data;
};

// A transversal double point together with the two segments meeting there.
// The (a) pair always precedes the (b) pair in component-then-segment order.
struct DoublePoint {
  PLPoint at;
  int component_a = 0;
  int segment_a = 0;
  int component_b = 0;
  int segment_b = 0;
};

// All pairwise segment intersections, sorted by position. Throws
// NonGenericInput when the diagram fails the genericity requirements.
std::vector<DoublePoint> find_crossings(const PLDiagram& p);

struct Box {
  double x0 = 0, y0 = 0, x1 = 0, y1 = 0;
};

// Certifying neighbourhoods extracted from the input geometry: one square per
// double point meeting only the two strands that cross there, one rectangle
// per vertical extremum (height-aware conversion only), and one chain of boxes
// covering each connecting arc between special points.
struct IsolationBoxes {
  std::vector<Box> intersection_squares;
  std::vector<Box> critical_rectangles;
  std::vector<std::vector<Box>> arc_rectangles;
};

struct GridifyOptions {
  std::uint32_t seed = 0;  // steers the choice of admissible rotation
};

struct ExtremumRow {
  double height = 0;  // input height of the vertical extremum
  int row = 0;        // grid row of the corner realizing it
};

struct GridifyReport {
  int attempts = 0;                 // rotation candidates tried
  int rot_a = 1, rot_b = 0;         // the rotation used: cos = a/c, sin = b/c
  int rot_c = 1;
  int scale_pow10 = 0;              // decimal scaling applied to the input
  IsolationBoxes boxes;
  std::vector<ExtremumRow> extremum_rows;  // ascending, height-aware only
};

// Convert a generic polygonal diagram to a grid diagram of the same oriented
// link: component count, crossing count, writhe, and the over/under choice at
// every crossing survive, and each connecting arc keeps its net turn up to
// the quarter-turn rounding of the grid. The seed picks among admissible tiny
// rotations, so different seeds may give different (planar-isotopic) outputs.
GridDiagram gridify(const PLDiagram& p, const GridifyOptions& options = {},
                    GridifyReport* report = nullptr);

// As gridify, but additionally every local extremum of the vertical
// coordinate lands on its own grid corner row and those rows are ordered,
// bottom to top, exactly like the extrema heights. Requires all extrema and
// all double points to sit at pairwise distinct heights; otherwise throws
// DegenerateHeights.
GridDiagram gridify_with_height(const PLDiagram& p, const GridifyOptions& options = {},
                                GridifyReport* report = nullptr);

}  // namespace gridknot
