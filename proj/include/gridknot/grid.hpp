#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "gridknot/errors.hpp"

namespace gridknot {

// Cell coordinates. Columns count left to right, rows bottom to top, both 0-based.
struct Cell {
  int col = 0;
  int row = 0;
  auto operator<=>(const Cell&) const = default;
};

enum class MarkerKind : std::uint8_t { X, O };

struct Marker {
  Cell cell;
  MarkerKind kind = MarkerKind::X;
  auto operator<=>(const Marker&) const = default;
};

// A transversal double point. The vertical strand is the overstrand at every
// crossing; `sign` is +1 when the horizontal strand's travel direction turned
// a quarter turn counterclockwise gives the vertical strand's travel direction.
struct Crossing {
  int col = 0;
  int row = 0;
  int sign = 0;
  auto operator<=>(const Crossing&) const = default;
};

// One closed circle of the underlying curve: the cyclic marker path, starting
// at the lexicographically least X cell and following the orientation
// (vertical segments run X to O, horizontal segments run O to X).
// A coincident X/O cell is a point component with a single entry.
struct Component {
  std::vector<Marker> path;
  bool degenerate = false;
};

// Closed grid diagram on the n-by-n fundamental domain. xs[c] / os[c] give the
// row of the X / O in column c; both are permutations of 0..n-1. A column may
// carry its X and O in the same cell (a point component, as produced by a
// birth). n == 0 is the empty diagram.
class GridDiagram {
 public:
  GridDiagram() = default;

  // Validates and builds; throws NotPermutation / SizeMismatch.
  static GridDiagram make(int n, std::vector<int> xs, std::vector<int> os);

  int index() const { return n_; }
  const std::vector<int>& xs() const { return xs_; }
  const std::vector<int>& os() const { return os_; }

  int x_row(int col) const { return xs_[static_cast<size_t>(col)]; }
  int o_row(int col) const { return os_[static_cast<size_t>(col)]; }
  int x_col(int row) const { return x_col_[static_cast<size_t>(row)]; }
  int o_col(int row) const { return o_col_[static_cast<size_t>(row)]; }

  bool coincident(int col) const { return xs_[static_cast<size_t>(col)] == os_[static_cast<size_t>(col)]; }
  bool empty() const { return n_ == 0; }

  bool operator==(const GridDiagram& other) const {
    return n_ == other.n_ && xs_ == other.xs_ && os_ == other.os_;
  }
  auto operator<=>(const GridDiagram& other) const {
    if (auto c = n_ <=> other.n_; c != 0) return c;
    if (auto c = xs_ <=> other.xs_; c != 0) return c;
    return os_ <=> other.os_;
  }

  std::vector<Marker> markers() const;

 private:
  GridDiagram(int n, std::vector<int> xs, std::vector<int> os);

  int n_ = 0;
  std::vector<int> xs_;
  std::vector<int> os_;
  std::vector<int> x_col_;  // row -> column of its X
  std::vector<int> o_col_;  // row -> column of its O
};

// Closed circles of the diagram, sorted by their starting marker.
std::vector<Component> trace(const GridDiagram& d);

// All transversal double points, sorted by (col, row).
std::vector<Crossing> crossings(const GridDiagram& d);

int writhe(const GridDiagram& d);

// Transpose across the main diagonal, exchanging the roles of X and O so that
// vertical strands stay oriented X to O. Crossing count is preserved.
GridDiagram transpose(const GridDiagram& d);

struct GridDiagramHash {
  size_t operator()(const GridDiagram& d) const noexcept {
    size_t h = std::hash<int>()(d.index());
    auto mix = [&h](int v) {
      h ^= std::hash<int>()(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    };
    for (int v : d.xs()) mix(v);
    for (int v : d.os()) mix(v + 1024);
    return h;
  }
};

}  // namespace gridknot
