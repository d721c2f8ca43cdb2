#pragma once

#include <string>
#include <vector>

#include "gridknot/grid.hpp"

namespace gridknot {

enum class Turn : std::uint8_t { L, R };

// Word in the turn letters of an oriented grid arc. The empty word prints as "I".
struct Arcword {
  std::vector<Turn> letters;

  bool operator==(const Arcword&) const = default;

  static Arcword parse(const std::string& text);  // "I" or a string over {L,R}
  std::string str() const;
};

// Deletes adjacent LR / RL pairs, leftmost pair first, until none remain.
// The result is independent of deletion order.
Arcword reduce_arcword(const Arcword& w);

// (#L - #R) mod 4, reported in 0..3.
int net_turn(const Arcword& w);

// An arc: a marker path along one component, endpoints included. Interior
// markers are its turns; every marker of a grid arc is a quarter turn.
struct GridArc {
  std::vector<Cell> corners;  // at least 2 cells, consecutive cells share a row or column
};

// Turn letters of the arc's interior corners in travel order. L is a
// counterclockwise quarter turn.
Arcword arc_word(const GridArc& arc);

// Extracts the arc from `from` to `to` along the component containing both,
// walking in the orientation of the diagram. Throws EndpointMismatch if the
// cells are not marker cells of one component.
GridArc extract_arc(const GridDiagram& d, Cell from, Cell to);

}  // namespace gridknot
