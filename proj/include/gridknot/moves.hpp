#pragma once

#include <compare>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "gridknot/grid.hpp"

namespace gridknot {

enum class Axis : std::uint8_t { Cols, Rows };

// Corner of the 2x2 block a stabilization opens up.
enum class Corner : std::uint8_t { SW, SE, NW, NE };

inline bool corner_east(Corner k) { return k == Corner::SE || k == Corner::NE; }
inline bool corner_north(Corner k) { return k == Corner::NW || k == Corner::NE; }

// Stabilization at the marker of kind `marker` in cell `at`: the marker's row
// and column split, the cell becomes a 2x2 block holding the opposite-kind
// marker in corner `corner` and two markers of `marker`'s kind next to it.
// Other markers of the split row/column land in the row/column away from the
// corner. n grows by one.
struct StabMove {
  MarkerKind marker = MarkerKind::X;
  Cell at;
  Corner corner = Corner::SW;
  auto operator<=>(const StabMove&) const = default;
};

// Destabilization deleting the X,O pair that shares a line: axis Cols means
// the pair shares a column (cells `at` and `at` one row up), axis Rows means
// it shares a row (`at` and `at` one column right). The pair's own line empties
// and is removed, the two lines it separated merge. Valid only where the pair
// sits in a 2x2 block completing a stabilization's footprint. n shrinks by one.
struct DestabMove {
  Axis axis = Axis::Cols;
  Cell at;
  auto operator<=>(const DestabMove&) const = default;
};

// Interchange of adjacent parallel lines index and index+1. wrap=true is the
// interchange of last and first across the fundamental domain's edge; its
// index must be n-1.
struct CommuteMove {
  Axis axis = Axis::Cols;
  int index = 0;
  bool wrap = false;
  auto operator<=>(const CommuteMove&) const = default;
};

// Composite crossing transfer: two commutations, both of which must classify
// as R2 interchanges, the first adding two double points and the second
// removing two, one row interchange and one column interchange in either
// order. The crossing names the double point being carried around its bend.
struct TransferMove {
  Cell crossing;
  CommuteMove first;
  CommuteMove second;
  auto operator<=>(const TransferMove&) const = default;
};

// Adds one new row and one new column meeting in `cell` of the enlarged grid,
// with an X and an O together in that cell.
struct BirthMove {
  Cell cell;
  auto operator<=>(const BirthMove&) const = default;
};

// Removes a coincident X/O pair with its row and column.
struct DeathMove {
  int column = 0;
  auto operator<=>(const DeathMove&) const = default;
};

enum class SaddleDir : std::uint8_t {
  MainToAnti,  // O's at (c,r) and (c+1,r+1) move to (c,r+1) and (c+1,r)
  AntiToMain,  // the reverse configuration
};

// Exchange of two diagonally adjacent markers of one kind between their
// columns. Legal only when the exchange leaves the double point set unchanged.
struct SaddleMove {
  Cell at;  // lower-left cell of the 2x2 block
  SaddleDir dir = SaddleDir::MainToAnti;
  bool use_x = false;  // exchange the two X's instead of the two O's
  auto operator<=>(const SaddleMove&) const = default;
};

struct IdentityMove {
  auto operator<=>(const IdentityMove&) const = default;
};

// Canonical kind order for enumeration and certificates follows the variant
// alternative order.
using Move = std::variant<StabMove, DestabMove, CommuteMove, TransferMove, BirthMove, DeathMove,
                          SaddleMove, IdentityMove>;

enum class MoveClass : std::uint8_t {
  KinkStab,
  R1Stab,
  KinkDestab,
  R1Destab,
  CommObstructed,
  CommUnnested,
  CommNestedP,
  CommNestedR2,
  CommNestedR3,
  CommComposite,
  CommBoundaryArc,
  Transfer,
  Birth,
  Death,
  Saddle,
  Identity,
};

const char* move_class_name(MoveClass c);

struct Classification {
  MoveClass cls = MoveClass::Identity;
  int delta_crossings = 0;   // double point count change
  int separating_arcs = 0;   // transversal strands splitting the nested pair
  auto operator<=>(const Classification&) const = default;
};

// Applies a move; throws a GridError naming the violated precondition.
GridDiagram apply_move(const GridDiagram& d, const Move& m);

// Classifies without applying side effects. Commutations classify even when
// obstructed (CommObstructed); apply_move() refuses those.
Classification classify(const GridDiagram& d, const Move& m);

// The move that undoes m. apply_move(apply_move(d,m), inverse(d,m)) == d.
Move inverse(const GridDiagram& d, const Move& m);

// All applicable moves on d whose classification satisfies `filter`, in
// canonical order (kind, then parameters lexicographically).
std::vector<Move> enumerate_moves(const GridDiagram& d,
                                  const std::function<bool(const Classification&)>& filter);

// True exactly for the grid planar isotopy generators: kink stabilizations
// and destabilizations, un-nested commutations, P commutations, and crossing
// transfers. Interchanges across the domain edge never qualify.
bool is_planar_isotopy_step(MoveClass cls);

// Image cells of each marker of d under m. Deleted markers map to nothing;
// the marker a stabilization splits maps to both of its replacements.
std::vector<std::pair<Marker, std::vector<Cell>>> marker_map(const GridDiagram& d, const Move& m);

// Rows, columns, and marker cells a move reads or writes, in the frame of the
// diagram it applies to. Line insertions/removals count their position.
struct MoveSupport {
  std::set<int> rows;
  std::set<int> cols;
  std::set<Cell> cells;
};

MoveSupport move_support(const GridDiagram& d, const Move& m);

bool supports_disjoint(const MoveSupport& a, const MoveSupport& b);

std::string move_kind_name(const Move& m);

}  // namespace gridknot
