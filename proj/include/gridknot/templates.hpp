#pragma once

#include <string>
#include <vector>

#include "gridknot/movie.hpp"

namespace gridknot {

// Which edge of a rectangular window a strand crosses.
enum class Edge { Left, Right, Bottom, Top };

// Travel direction of a strand where it crosses a window edge. Vertical
// strands run X to O (Up when the O sits above the X), horizontal strands run
// O to X (Right when the X sits to the right of the O).
enum class ArcDir { Up, Down, Left, Right };

// A strand of the ambient diagram entering or leaving the window. `offset` is
// the column (for Bottom/Top) or row (for Left/Right) of the crossing point,
// in window coordinates.
struct BoundaryArc {
  Edge edge = Edge::Bottom;
  int offset = 0;
  ArcDir dir = ArcDir::Up;
  auto operator<=>(const BoundaryArc&) const = default;
};

// A rectangular window into a grid diagram: the markers inside it (in window
// coordinates) plus the boundary arcs where strands cross its edges. Two
// sub-diagrams with equal extents, markers and arcs show the same local
// picture regardless of where the window sits in the ambient grid.
struct SubDiagram {
  Cell origin{};  // ambient cell of the window's lower-left corner
  int width = 0;
  int height = 0;
  std::vector<Marker> markers;        // sorted, window coordinates
  std::vector<BoundaryArc> boundary_arcs;  // sorted
  auto operator<=>(const SubDiagram&) const = default;
};

// True when the two windows show the same local picture (extent, markers and
// boundary arcs equal); the ambient origins are ignored.
bool same_pattern(const SubDiagram& a, const SubDiagram& b);

// Extract the window of `d` with the given lower-left corner and extent.
// The window must lie inside the grid.
SubDiagram window(const GridDiagram& d, Cell origin, int width, int height);

// One frame of a template fragment: the local picture before `step` is
// applied. The final frame of a fragment carries an Identity step.
struct MovieFrame {
  SubDiagram sub;
  Move step = IdentityMove{};
  bool operator==(const MovieFrame&) const = default;
};

// Tally of the critical-level and crossing-change content of a template,
// summed over both fragments.
struct CriticalContent {
  int births = 0;
  int deaths = 0;
  int saddles = 0;
  int r1 = 0;
  int r2 = 0;
  int r3 = 0;
  int transfer = 0;
  auto operator<=>(const CriticalContent&) const = default;
};

// How a template interacts with surface boundary. Interior templates involve
// critical levels; Boundary templates are level-preserving but change
// crossings; PlanarBoundary templates preserve the planar picture (transfers
// included, since their crossing changes cancel within the move).
enum class BoundaryClass { Interior, Boundary, PlanarBoundary };

// Which templates a rewriting context admits.
enum class BoundaryMode { Closed, Boundary, PlanarBoundary };

// Derive the default boundary class from critical content.
BoundaryClass classify_boundary(const CriticalContent& content);

// A local film-strip rewrite rule: two fragments with equal window extents
// whose first and last pictures agree. Applying the rule replaces an
// occurrence of the left fragment by the right one.
struct MovieMoveTemplate {
  int id = 0;
  std::vector<MovieFrame> left;
  std::vector<MovieFrame> right;
  CriticalContent critical;
  BoundaryClass boundary_class = BoundaryClass::Interior;
};

// Symmetry expansion flags carried by a template source entry. Reflections
// are only accepted on fragments whose steps keep the grid size (interchange,
// transfer, saddle, identity): mirroring a window while the grid grows or
// shrinks has no fixed ambient origin to match at. Crossing swaps and time
// reversal apply to every fragment.
struct SymmetryFlags {
  bool reflect_h = false;      // mirror across a horizontal axis
  bool reflect_v = false;      // mirror across a vertical axis
  bool swap_crossings = false; // exchange over- and under-strands
  bool time_reverse = false;   // play the fragments backwards
  auto operator<=>(const SymmetryFlags&) const = default;
};

// Parse a template file (JSON text) and expand each entry's symmetry closure.
// Throws SchemaError for malformed input, including fragments whose
// endpoints disagree. Empty input text or an empty array yields no templates.
std::vector<MovieMoveTemplate> load_templates(const std::string& json_text);

// Keep the templates admissible in the given mode: Closed keeps all,
// Boundary drops Interior templates, PlanarBoundary additionally drops
// templates with crossing-count changes (transfers stay).
std::vector<MovieMoveTemplate> boundary_class_filter(
    const std::vector<MovieMoveTemplate>& templates, BoundaryMode mode);

// Where a template is applied: the first rewritten step and the ambient
// lower-left corner of the window.
struct MovieSite {
  int step = 0;
  Cell origin{};
};

// Rewrite `m` by `t` at `site`: the left fragment must match the film strip
// there (window contents frame by frame, steps equal to the fragment's steps
// translated to the window, step supports confined to the window). Replaces
// those steps by the right fragment's. Throws NoMatch when the left fragment
// does not occur at the site and ResultInvalid when the spliced movie fails
// validation or disturbs the picture outside the window.
GridMovie apply_movie_move(const GridMovie& m, const MovieMoveTemplate& t,
                           const MovieSite& site);

}  // namespace gridknot
