#include <doctest.h>

#include <functional>
#include <vector>

#include "gridknot/errors.hpp"
#include "gridknot/movie.hpp"

using namespace gridknot;

namespace {

GridDiagram empty_diagram() { return GridDiagram::make(0, {}, {}); }
GridDiagram trefoil() { return GridDiagram::make(5, {4, 0, 1, 2, 3}, {1, 2, 3, 4, 0}); }
GridDiagram unnested_example() { return GridDiagram::make(4, {1, 0, 3, 2}, {0, 1, 2, 3}); }
// Commuting columns 2 and 3 here crosses a strand over a whole nested span;
// the interchange decomposes into simpler moves instead of being one of them.
GridDiagram composite_example() { return GridDiagram::make(5, {0, 1, 3, 4, 2}, {2, 3, 1, 0, 4}); }

GridMovie sphere_movie() { return {empty_diagram(), {BirthMove{{0, 0}}, DeathMove{0}}}; }

// A circle splits into two and remerges before dying: one handle.
GridMovie torus_movie() {
  return {empty_diagram(),
          {BirthMove{{0, 0}}, StabMove{MarkerKind::X, {0, 0}, Corner::NE},
           SaddleMove{{0, 0}, SaddleDir::MainToAnti, false},
           SaddleMove{{0, 0}, SaddleDir::AntiToMain, false}, DestabMove{Axis::Cols, {0, 0}},
           DeathMove{0}}};
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

TEST_CASE("a birth and a death trace out a sphere") {
  GridMovie m = sphere_movie();
  CHECK(validate_movie(m) == std::vector<MoveClass>{MoveClass::Birth, MoveClass::Death});

  MovieStats st = movie_stats(m);
  CHECK(st.births == 1);
  CHECK(st.deaths == 1);
  CHECK(st.saddles == 0);
  CHECK(st.euler_characteristic == 2);
  CHECK(st.component_timeline == std::vector<int>{0, 1, 0});
  CHECK(st.surface_pieces == 1);
  CHECK(st.boundary_circles == 0);
  CHECK(st.genus == 0);
}

TEST_CASE("splitting and remerging a circle traces out a torus") {
  GridMovie m = torus_movie();
  std::vector<MoveClass> classes = validate_movie(m);
  CHECK(classes == std::vector<MoveClass>{MoveClass::Birth, MoveClass::KinkStab,
                                          MoveClass::Saddle, MoveClass::Saddle,
                                          MoveClass::KinkDestab, MoveClass::Death});

  MovieStats st = movie_stats(m);
  CHECK(st.births == 1);
  CHECK(st.deaths == 1);
  CHECK(st.saddles == 2);
  CHECK(st.euler_characteristic == 0);
  CHECK(st.component_timeline == std::vector<int>{0, 1, 1, 2, 1, 1, 0});
  CHECK(st.surface_pieces == 1);
  CHECK(st.boundary_circles == 0);
  CHECK(st.genus == 1);
}

TEST_CASE("a movie without critical steps is a cylinder over its link") {
  StabMove stab{MarkerKind::X, {0, 4}, Corner::NE};
  GridMovie m{trefoil(), {stab, inverse(trefoil(), stab)}};
  validate_movie(m);

  MovieStats st = movie_stats(m);
  CHECK(st.births == 0);
  CHECK(st.deaths == 0);
  CHECK(st.saddles == 0);
  CHECK(st.euler_characteristic == 0);
  CHECK(st.component_timeline == std::vector<int>{1, 1, 1});
  CHECK(st.surface_pieces == 1);
  CHECK(st.boundary_circles == 2);
  CHECK(!st.genus.has_value());
}

TEST_CASE("the empty movie is an empty surface") {
  GridMovie m{empty_diagram(), {}};
  CHECK(validate_movie(m).empty());

  MovieStats st = movie_stats(m);
  CHECK(st.euler_characteristic == 0);
  CHECK(st.component_timeline == std::vector<int>{0});
  CHECK(st.surface_pieces == 0);
  CHECK(st.boundary_circles == 0);
  CHECK(!st.genus.has_value());
}

TEST_CASE("concatenating movies adds their censuses") {
  GridMovie twice = sphere_movie();
  GridMovie second = sphere_movie();
  twice.steps.insert(twice.steps.end(), second.steps.begin(), second.steps.end());

  MovieStats st = movie_stats(twice);
  CHECK(st.euler_characteristic == 4);
  CHECK(st.surface_pieces == 2);
  CHECK(st.boundary_circles == 0);
  CHECK(!st.genus.has_value());
}

TEST_CASE("validation names the first step that does not apply") {
  GridMovie m{trefoil(), {CommuteMove{Axis::Cols, 1, false}}};
  CHECK(code_of([&] { validate_movie(m); }) == Errc::StepInvalid);
  try {
    validate_movie(m);
  } catch (const GridError& e) {
    CHECK(std::string(e.what()).find("step 0") != std::string::npos);
  }

  StabMove stab{MarkerKind::X, {0, 4}, Corner::NE};
  GridMovie later{trefoil(), {stab, CommuteMove{Axis::Cols, 2, false}}};
  try {
    validate_movie(later);
  } catch (const GridError& e) {
    CHECK(e.code() == Errc::StepInvalid);
    CHECK(std::string(e.what()).find("step 1") != std::string::npos);
  }
}

TEST_CASE("composite commutations need explicit permission") {
  GridMovie m{composite_example(), {CommuteMove{Axis::Cols, 2, false}}};
  CHECK(code_of([&] { validate_movie(m); }) == Errc::StepInvalid);

  MovieOptions permissive;
  permissive.allow_composite = true;
  CHECK(validate_movie(m, permissive) == std::vector<MoveClass>{MoveClass::CommComposite});
}

TEST_CASE("a transfer chain is a movie of planar steps") {
  GridMovie m{GridDiagram::make(5, {0, 1, 2, 3, 4}, {1, 3, 4, 2, 0}),
              {StabMove{MarkerKind::X, {0, 0}, Corner::SE},
               TransferMove{{3, 4}, CommuteMove{Axis::Cols, 4, false},
                            CommuteMove{Axis::Rows, 4, false}},
               DestabMove{Axis::Cols, {1, 0}}, DestabMove{Axis::Cols, {0, 0}}}};
  std::vector<MoveClass> classes = validate_movie(m);
  REQUIRE(classes.size() == 4);
  for (MoveClass c : classes) CHECK(is_planar_isotopy_step(c));
  CHECK(stills(m).back() == GridDiagram::make(4, {0, 1, 2, 3}, {3, 2, 0, 1}));
}

TEST_CASE("padding a still changes no census") {
  GridMovie m = torus_movie();
  MovieStats before = movie_stats(m);
  std::vector<MoveClass> classes = validate_movie(m);

  for (int k : {0, 3, static_cast<int>(m.steps.size())}) {
    GridMovie padded = pad_still(m, k);
    REQUIRE(padded.steps.size() == m.steps.size() + 1);

    std::vector<MoveClass> expected = classes;
    expected.insert(expected.begin() + k, MoveClass::Identity);
    CHECK(validate_movie(padded) == expected);

    MovieStats st = movie_stats(padded);
    CHECK(st.euler_characteristic == before.euler_characteristic);
    CHECK(st.surface_pieces == before.surface_pieces);
    CHECK(st.boundary_circles == before.boundary_circles);
    CHECK(st.genus == before.genus);
    std::vector<int> timeline = before.component_timeline;
    timeline.insert(timeline.begin() + k, timeline[k]);
    CHECK(st.component_timeline == timeline);
  }

  CHECK(code_of([&] { pad_still(m, -1); }) == Errc::IndexOutOfRange);
  CHECK(code_of([&] { pad_still(m, static_cast<int>(m.steps.size()) + 1); }) ==
        Errc::IndexOutOfRange);
}

TEST_CASE("distant stabilizations interchange with re-targeted lines") {
  // The second stabilization hits the image of the marker at (1,0); swapping
  // the steps re-expresses each in the frame it now acts on.
  GridMovie m{trefoil(), {StabMove{MarkerKind::X, {0, 4}, Corner::NE},
                          StabMove{MarkerKind::X, {2, 0}, Corner::SW}}};
  validate_movie(m);

  GridMovie swapped = interchange_distant(m, 0);
  CHECK(swapped.steps[0] == Move{StabMove{MarkerKind::X, {1, 0}, Corner::SW}});
  CHECK(swapped.steps[1] == Move{StabMove{MarkerKind::X, {0, 5}, Corner::NE}});
  CHECK(stills(swapped).back() == stills(m).back());

  CHECK(interchange_distant(swapped, 0) == m);

  MovieStats before = movie_stats(m);
  MovieStats after = movie_stats(swapped);
  CHECK(after.euler_characteristic == before.euler_characteristic);
  CHECK(after.surface_pieces == before.surface_pieces);
  CHECK(after.boundary_circles == before.boundary_circles);
}

TEST_CASE("steps sharing a line refuse to interchange") {
  // The second stabilization splits a marker the first one just created.
  GridMovie m{trefoil(), {StabMove{MarkerKind::X, {0, 4}, Corner::NE},
                          StabMove{MarkerKind::X, {1, 4}, Corner::SW}}};
  validate_movie(m);
  CHECK(code_of([&] { interchange_distant(m, 0); }) == Errc::OverlappingSupport);
  CHECK(code_of([&] { interchange_distant(m, -1); }) == Errc::IndexOutOfRange);
  CHECK(code_of([&] { interchange_distant(m, 1); }) == Errc::IndexOutOfRange);
}

TEST_CASE("a step consuming what its neighbour created cannot re-target") {
  // The death kills exactly the point the birth made; there is no way to say
  // "that column" before the birth happens.
  GridMovie m = sphere_movie();
  CHECK(code_of([&] { interchange_distant(m, 0); }) == Errc::AmbiguousRetarget);
}

TEST_CASE("identity steps interchange with anything") {
  GridMovie m{trefoil(), {IdentityMove{}, StabMove{MarkerKind::X, {0, 4}, Corner::NE}}};
  GridMovie swapped = interchange_distant(m, 0);
  CHECK(swapped.steps[0] == Move{StabMove{MarkerKind::X, {0, 4}, Corner::NE}});
  CHECK(swapped.steps[1] == Move{IdentityMove{}});
  CHECK(interchange_distant(swapped, 0) == m);
}

TEST_CASE("movies equal level by level are movie isotopic") {
  GridMovie a{unnested_example(), {IdentityMove{}}};
  CHECK(is_movie_isotopy(a, a, {}));
  CHECK(is_movie_isotopy(a, a, {{}, {}}));
}

TEST_CASE("per-still witnesses carry one movie to the other") {
  CommuteMove slide{Axis::Cols, 1, false};
  GridMovie a{unnested_example(), {IdentityMove{}}};
  GridMovie b{apply_move(unnested_example(), slide), {IdentityMove{}}};

  CHECK(is_movie_isotopy(a, b, {{Move{slide}}, {Move{slide}}}));
  CHECK(!is_movie_isotopy(a, b, {}));
  CHECK(!is_movie_isotopy(a, b, {{Move{slide}}, {}}));

  CHECK(code_of([&] { is_movie_isotopy(a, b, {{Move{slide}}}); }) == Errc::LevelCountMismatch);
  GridMovie longer{unnested_example(), {IdentityMove{}, IdentityMove{}}};
  CHECK(code_of([&] { is_movie_isotopy(a, longer, {}); }) == Errc::LevelCountMismatch);
}

TEST_CASE("witness steps must be planar isotopy generators") {
  GridMovie a{unnested_example(), {}};
  CHECK(code_of([&] {
          is_movie_isotopy(a, a, {{Move{CommuteMove{Axis::Cols, 3, true}}}});
        }) == Errc::NonPlanarWitness);
  CHECK(code_of([&] { is_movie_isotopy(a, a, {{Move{BirthMove{{0, 0}}}}}); }) ==
        Errc::NonPlanarWitness);
}
