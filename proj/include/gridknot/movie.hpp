#pragma once

#include <optional>
#include <vector>

#include "gridknot/grid.hpp"
#include "gridknot/moves.hpp"

namespace gridknot {

// A movie of grid diagrams in move-list form: still i is `initial` after the
// first i steps, so a movie with k steps has k+1 stills. Births, deaths and
// saddles are the critical levels of the surface the movie traces out; every
// other step is a level-preserving isotopy of the link of stills.
struct GridMovie {
  GridDiagram initial;
  std::vector<Move> steps;
  bool operator==(const GridMovie&) const = default;
};

// All stills in order. Throws StepInvalid naming the first step that does not
// apply.
std::vector<GridDiagram> stills(const GridMovie& m);

struct MovieOptions {
  // Accept commutations that classify as composites of simpler interchanges.
  bool allow_composite = false;
};

// Classification of every step in order. Throws StepInvalid when a step does
// not apply or when a commutation is obstructed or (by default) composite.
std::vector<MoveClass> validate_movie(const GridMovie& m, const MovieOptions& opts = {});

// Census of the surface a movie traces out: critical point counts, the Euler
// characteristic births + deaths - saddles, the component count of every
// still, the number of connected pieces of the surface, and the circles on
// the first and last stills. `genus` is set only when the surface is closed
// (both end stills empty) and connected; orientability is assumed.
struct MovieStats {
  int births = 0;
  int deaths = 0;
  int saddles = 0;
  int euler_characteristic = 0;
  std::vector<int> component_timeline;
  int surface_pieces = 0;
  int boundary_circles = 0;
  std::optional<int> genus;
};

MovieStats movie_stats(const GridMovie& m);

// Whether the per-still witness sequences carry each still of `a` to the
// matching still of `b`. An empty witness list stands for all-empty
// witnesses. Throws LevelCountMismatch when the still counts differ or the
// witness list has the wrong length, NonPlanarWitness when a witness step is
// not a grid planar isotopy generator on the still it reaches.
bool is_movie_isotopy(const GridMovie& a, const GridMovie& b,
                      const std::vector<std::vector<Move>>& level_isotopies);

// Duplicates still `index` by inserting an identity step in front of step
// `index`; passing the step count pads at the end. The result has one more
// still. Throws IndexOutOfRange.
GridMovie pad_still(const GridMovie& m, int index);

// Swaps steps i and i+1 when their supports are disjoint, re-expressing each
// step in the frame it now applies in. Throws OverlappingSupport when the
// supports meet, AmbiguousRetarget when a step's coordinates cannot be
// re-expressed (it touches a line the other step created or removed), and
// IndexOutOfRange. The final still and the surface census are unchanged, and
// swapping again at the same position restores the original movie.
GridMovie interchange_distant(const GridMovie& m, int i);

}  // namespace gridknot
