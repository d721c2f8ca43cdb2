#include <doctest.h>

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <set>

#include "gridknot/errors.hpp"
#include "gridknot/grid.hpp"

using namespace gridknot;

namespace {

// Independent oracle: lay every strand out as an explicit axis-aligned
// segment with a travel direction and intersect the segments pairwise.
struct Seg {
  int fixed = 0;  // the coordinate the segment keeps
  int lo = 0, hi = 0;
  int dir = 0;  // travel sign along the free axis
};

std::vector<Crossing> crossings_oracle(const GridDiagram& d) {
  std::vector<Seg> vert, horiz;
  for (int c = 0; c < d.index(); ++c) {
    int a = d.x_row(c), b = d.o_row(c);  // vertical runs X to O
    vert.push_back({c, std::min(a, b), std::max(a, b), b > a ? 1 : b < a ? -1 : 0});
  }
  for (int r = 0; r < d.index(); ++r) {
    int a = d.o_col(r), b = d.x_col(r);  // horizontal runs O to X
    horiz.push_back({r, std::min(a, b), std::max(a, b), b > a ? 1 : b < a ? -1 : 0});
  }
  std::vector<Crossing> out;
  for (const Seg& v : vert)
    for (const Seg& h : horiz)
      if (v.lo < h.fixed && h.fixed < v.hi && h.lo < v.fixed && v.fixed < h.hi)
        out.push_back({v.fixed, h.fixed, v.dir * h.dir});
  std::sort(out.begin(), out.end());
  return out;
}

GridDiagram trefoil() { return GridDiagram::make(5, {4, 0, 1, 2, 3}, {1, 2, 3, 4, 0}); }

GridDiagram random_diagram(std::mt19937& rng, int n) {
  std::vector<int> xs(static_cast<size_t>(n)), os(static_cast<size_t>(n));
  std::iota(xs.begin(), xs.end(), 0);
  std::iota(os.begin(), os.end(), 0);
  std::shuffle(xs.begin(), xs.end(), rng);
  std::shuffle(os.begin(), os.end(), rng);
  return GridDiagram::make(n, xs, os);
}

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const GridError& e) {
    return e.code();
  }
  REQUIRE(false);
  return Errc::ParseError;
}

}  // namespace

TEST_CASE("construction validates permutations") {
  CHECK_NOTHROW(GridDiagram::make(0, {}, {}));
  CHECK_NOTHROW(GridDiagram::make(1, {0}, {0}));
  CHECK(code_of([] { GridDiagram::make(2, {0, 1}, {0, 1, 2}); }) == Errc::SizeMismatch);
  CHECK(code_of([] { GridDiagram::make(2, {0, 0}, {1, 0}); }) == Errc::NotPermutation);
  CHECK(code_of([] { GridDiagram::make(2, {0, 2}, {1, 0}); }) == Errc::NotPermutation);
}

TEST_CASE("trefoil crossings and writhe") {
  GridDiagram d = trefoil();
  std::vector<Crossing> cr = crossings(d);
  std::vector<Crossing> want{{1, 1, 1}, {2, 2, 1}, {3, 3, 1}};
  CHECK(cr == want);
  CHECK(writhe(d) == 3);
  CHECK(cr == crossings_oracle(d));
}

TEST_CASE("mirror image flips every crossing sign") {
  GridDiagram d = trefoil();
  int n = d.index();
  std::vector<int> xs(static_cast<size_t>(n)), os(static_cast<size_t>(n));
  for (int c = 0; c < n; ++c) {
    xs[static_cast<size_t>(n - 1 - c)] = d.x_row(c);
    os[static_cast<size_t>(n - 1 - c)] = d.o_row(c);
  }
  GridDiagram m = GridDiagram::make(n, xs, os);
  CHECK(writhe(m) == -3);
  CHECK(crossings(m).size() == 3);
}

TEST_CASE("crosseach: oracle agreement on random diagrams") {
  std::mt19937 rng(20260819);
  for (int trial = 0; trial < 400; ++trial) {
    int n = 2 + static_cast<int>(rng() % 7);
    GridDiagram d = random_diagram(rng, n);
    CHECK(crossings(d) == crossings_oracle(d));
  }
}

TEST_CASE("trefoil traces as one circle visiting columns 0,2,4,1,3") {
  std::vector<Component> comps = trace(trefoil());
  REQUIRE(comps.size() == 1);
  const Component& c = comps[0];
  CHECK_FALSE(c.degenerate);
  REQUIRE(c.path.size() == 10);
  CHECK(c.path[0] == Marker{{0, 4}, MarkerKind::X});
  std::vector<int> xcols;
  for (const Marker& m : c.path)
    if (m.kind == MarkerKind::X) xcols.push_back(m.cell.col);
  CHECK(xcols == std::vector<int>{0, 2, 4, 1, 3});
  // Path alternates X,O starting with X, and consecutive markers share a line.
  for (size_t i = 0; i < c.path.size(); ++i) {
    CHECK(c.path[i].kind == (i % 2 == 0 ? MarkerKind::X : MarkerKind::O));
    const Marker& a = c.path[i];
    const Marker& b = c.path[(i + 1) % c.path.size()];
    CHECK((a.cell.col == b.cell.col || a.cell.row == b.cell.row));
  }
}

TEST_CASE("coincident cell traces as a point component") {
  GridDiagram d = GridDiagram::make(3, {0, 1, 2}, {0, 2, 1});
  std::vector<Component> comps = trace(d);
  REQUIRE(comps.size() == 2);
  CHECK(comps[0].degenerate);
  CHECK(comps[0].path.size() == 1);
  CHECK(comps[0].path[0].cell == Cell{0, 0});
  CHECK_FALSE(comps[1].degenerate);
  CHECK(comps[1].path.size() == 4);
  CHECK(crossings(d).empty());
}

TEST_CASE("component count on random diagrams matches a marker pairing oracle") {
  // Oracle: union-find on markers, joining the two markers of every column
  // and the two markers of every row, then counting classes.
  std::mt19937 rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 1 + static_cast<int>(rng() % 8);
    GridDiagram d = random_diagram(rng, n);
    std::vector<int> parent(static_cast<size_t>(2 * n));
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int v) {
      return parent[static_cast<size_t>(v)] == v
                 ? v
                 : parent[static_cast<size_t>(v)] = find(parent[static_cast<size_t>(v)]);
    };
    // Marker ids: X of column c is c, O of column c is n + c.
    for (int c = 0; c < n; ++c) parent[static_cast<size_t>(find(c))] = find(n + c);
    for (int r = 0; r < n; ++r)
      parent[static_cast<size_t>(find(d.x_col(r)))] = find(n + d.o_col(r));
    std::set<int> roots;
    for (int v = 0; v < 2 * n; ++v) roots.insert(find(v));
    CHECK(trace(d).size() == roots.size());
  }
}

TEST_CASE("transpose preserves crossing count and is an involution") {
  GridDiagram t = trefoil();
  CHECK(transpose(t) == t);  // this representative is symmetric across the diagonal
  std::mt19937 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    int n = 2 + static_cast<int>(rng() % 6);
    GridDiagram d = random_diagram(rng, n);
    GridDiagram td = transpose(d);
    CHECK(crossings(td).size() == crossings(d).size());
    CHECK(transpose(td) == d);
    CHECK(trace(td).size() == trace(d).size());
  }
}

TEST_CASE("empty diagram") {
  GridDiagram d = GridDiagram::make(0, {}, {});
  CHECK(d.empty());
  CHECK(d.index() == 0);
  CHECK(crossings(d).empty());
  CHECK(trace(d).empty());
  CHECK(d.markers().empty());
}

TEST_CASE("markers are sorted and complete") {
  GridDiagram d = trefoil();
  std::vector<Marker> ms = d.markers();
  CHECK(ms.size() == 10);
  CHECK(std::is_sorted(ms.begin(), ms.end()));
  for (const Marker& m : ms) {
    if (m.kind == MarkerKind::X)
      CHECK(d.x_row(m.cell.col) == m.cell.row);
    else
      CHECK(d.o_row(m.cell.col) == m.cell.row);
  }
}
