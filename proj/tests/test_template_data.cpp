#include <doctest.h>

#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gridknot/errors.hpp"
#include "gridknot/moves.hpp"
#include "gridknot/movie.hpp"
#include "gridknot/templates.hpp"

using namespace gridknot;

namespace {

std::string read_data_file() {
  std::ifstream f(std::string(GRIDKNOT_SOURCE_DIR) + "/data/movie_move_templates.json");
  REQUIRE(f.good());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::vector<MovieMoveTemplate> shipped() {
  static std::vector<MovieMoveTemplate> ts = load_templates(read_data_file());
  return ts;
}

std::optional<GridDiagram> realize_frame(const SubDiagram& s) {
  if (s.width != s.height) return std::nullopt;
  std::vector<int> xs(static_cast<size_t>(s.width), -1), os(static_cast<size_t>(s.width), -1);
  for (const Marker& m : s.markers)
    (m.kind == MarkerKind::X ? xs : os)[static_cast<size_t>(m.cell.col)] = m.cell.row;
  for (int v : xs)
    if (v < 0) return std::nullopt;
  for (int v : os)
    if (v < 0) return std::nullopt;
  try {
    return GridDiagram::make(s.width, xs, os);
  } catch (const GridError&) {
    return std::nullopt;
  }
}

// Rebuild the first frame as a stand-alone diagram and let the library play
// the recorded steps, checking every window against the filmed frame.
bool replay_fragment(const std::vector<MovieFrame>& frag) {
  std::optional<GridDiagram> d = realize_frame(frag.front().sub);
  if (!d) return false;
  for (size_t j = 0; j < frag.size(); ++j) {
    SubDiagram got = window(*d, {0, 0}, frag[j].sub.width, frag[j].sub.height);
    if (!same_pattern(got, frag[j].sub)) return false;
    if (j + 1 < frag.size()) *d = apply_move(*d, frag[j].step);
  }
  return true;
}

}  // namespace

TEST_CASE("the shipped rule file loads and covers ids 1 through 30") {
  std::vector<MovieMoveTemplate> ts = shipped();
  std::set<int> ids;
  for (const MovieMoveTemplate& t : ts) ids.insert(t.id);
  CHECK(ids.size() == 30);
  CHECK(*ids.begin() == 1);
  CHECK(*ids.rbegin() == 30);
  // symmetry closure multiplies the thirty written rules
  CHECK(ts.size() > 100);
}

TEST_CASE("every realizable shipped fragment replays against the library") {
  int replayed = 0;
  for (const MovieMoveTemplate& t : shipped()) {
    if (realize_frame(t.left.front().sub)) {
      CAPTURE(t.id);
      CHECK(replay_fragment(t.left));
      ++replayed;
    }
    if (realize_frame(t.right.front().sub)) {
      CAPTURE(t.id);
      CHECK(replay_fragment(t.right));
      ++replayed;
    }
  }
  // most rules are filmed through full-grid windows, so the bulk replays
  CHECK(replayed > 150);
}

TEST_CASE("boundary filters drop the rule families they must") {
  std::vector<MovieMoveTemplate> ts = shipped();

  std::vector<MovieMoveTemplate> boundary = boundary_class_filter(ts, BoundaryMode::Boundary);
  CHECK(!boundary.empty());
  for (const MovieMoveTemplate& t : boundary) {
    CAPTURE(t.id);
    CHECK(t.critical.births + t.critical.deaths + t.critical.saddles == 0);
  }

  std::vector<MovieMoveTemplate> planar = boundary_class_filter(ts, BoundaryMode::PlanarBoundary);
  CHECK(!planar.empty());
  bool kept_transfer = false;
  for (const MovieMoveTemplate& t : planar) {
    CAPTURE(t.id);
    bool no_reidemeister = t.critical.r1 + t.critical.r2 + t.critical.r3 == 0;
    CHECK((no_reidemeister || t.critical.transfer > 0));
    if (t.critical.transfer > 0) kept_transfer = true;
  }
  // crossing transfers survive the planar cut even though their legs are
  // double-point interchanges
  CHECK(kept_transfer);

  CHECK(boundary_class_filter(ts, BoundaryMode::Closed).size() == ts.size());
  CHECK(planar.size() < boundary.size());
  CHECK(boundary.size() < ts.size());
}

TEST_CASE("shipped rules rewrite the movies they were filmed from") {
  // the planar interchange do-undo rule erases a commute-and-back pair
  GridDiagram unn = GridDiagram::make(4, {1, 0, 3, 2}, {0, 1, 2, 3});
  Move c1 = CommuteMove{Axis::Cols, 1, false};
  GridMovie wiggle{unn, {c1, c1}};
  bool erased = false;
  for (const MovieMoveTemplate& t : shipped()) {
    if (t.id != 5) continue;
    try {
      GridMovie got = apply_movie_move(wiggle, t, {0, {0, 0}});
      if (got.steps.empty() && got.initial == unn) erased = true;
    } catch (const GridError&) {
    }
  }
  CHECK(erased);

  // the distant-interchange rule swaps two far-apart commutes
  GridDiagram isl = GridDiagram::make(8, {1, 0, 3, 2, 5, 4, 7, 6}, {0, 1, 2, 3, 4, 5, 6, 7});
  Move a = CommuteMove{Axis::Cols, 1, false};
  Move b = CommuteMove{Axis::Cols, 5, false};
  GridMovie two{isl, {a, b}};
  bool swapped = false;
  for (const MovieMoveTemplate& t : shipped()) {
    if (t.id != 8) continue;
    try {
      GridMovie got = apply_movie_move(two, t, {0, {0, 0}});
      if (got.steps == std::vector<Move>{b, a}) swapped = true;
    } catch (const GridError&) {
    }
  }
  CHECK(swapped);
}
