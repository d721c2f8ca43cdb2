#include <doctest.h>

#include <functional>
#include <vector>

#include "gridknot/errors.hpp"
#include "gridknot/json_io.hpp"

using namespace gridknot;
using nlohmann::json;

namespace {

GridDiagram trefoil() { return GridDiagram::make(5, {4, 0, 1, 2, 3}, {1, 2, 3, 4, 0}); }

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

TEST_CASE("diagrams round trip through json") {
  for (const GridDiagram& d :
       {trefoil(), GridDiagram::make(0, {}, {}), GridDiagram::make(1, {0}, {0})}) {
    CHECK(diagram_from_json(diagram_json(d)) == d);
  }
  CHECK(diagram_json(trefoil()) ==
        json{{"n", 5}, {"xs", {4, 0, 1, 2, 3}}, {"os", {1, 2, 3, 4, 0}}});
}

TEST_CASE("a json string holds the text form") {
  CHECK(diagram_from_json(json("5\n4 0 1 2 3\n1 2 3 4 0\n")) == trefoil());
}

TEST_CASE("every move kind round trips through json") {
  std::vector<Move> moves{
      StabMove{MarkerKind::O, {2, 3}, Corner::NW},
      DestabMove{Axis::Rows, {1, 0}},
      CommuteMove{Axis::Cols, 4, true},
      CommuteMove{Axis::Rows, 2, false},
      TransferMove{{3, 4}, CommuteMove{Axis::Cols, 4, false}, CommuteMove{Axis::Rows, 4, false}},
      BirthMove{{0, 5}},
      DeathMove{3},
      SaddleMove{{1, 1}, SaddleDir::AntiToMain, true},
      IdentityMove{},
  };
  for (const Move& m : moves) CHECK(move_from_json(move_json(m)) == m);
}

TEST_CASE("movies round trip through json") {
  GridMovie m{trefoil(), {StabMove{MarkerKind::X, {0, 4}, Corner::NE}, IdentityMove{}}};
  CHECK(movie_from_json(movie_json(m)) == m);
  CHECK(movie_from_json(json{{"initial", "0\n\n\n"}, {"steps", json::array()}}) ==
        GridMovie{GridDiagram::make(0, {}, {}), {}});
}

TEST_CASE("shape problems are schema errors, domain problems are not") {
  CHECK(code_of([] { diagram_from_json(json::array()); }) == Errc::SchemaError);
  CHECK(code_of([] { diagram_from_json(json{{"n", 2}, {"xs", {0, 1}}}); }) == Errc::SchemaError);
  CHECK(code_of([] { diagram_from_json(json{{"n", 2}, {"xs", {0, "1"}}, {"os", {1, 0}}}); }) ==
        Errc::SchemaError);
  CHECK(code_of([] { move_from_json(json{{"kind", "teleport"}}); }) == Errc::SchemaError);
  CHECK(code_of([] { move_from_json(json{{"kind", "birth"}, {"cell", {0}}}); }) ==
        Errc::SchemaError);
  CHECK(code_of([] { move_from_json(json{{"kind", "stab"}, {"marker", "x"}, {"at", {0, 0}},
                                         {"corner", "north"}}); }) == Errc::SchemaError);

  // A well-shaped record with bad content fails domain validation instead.
  CHECK(code_of([] { diagram_from_json(json{{"n", 2}, {"xs", {0, 0}}, {"os", {1, 0}}}); }) ==
        Errc::NotPermutation);
}

TEST_CASE("polyline links parse from json") {
  json j{{"components", json::array({json::array(
             {json::array({0.0, 0.0}), json::array({4, 0}), json::array({4, 3}),
              json::array({1, 3}), json::array({1, -1})})})},
         {"over", json::array({json{{"at", {1.0, 0.0}},
                                    {"over_component", 0},
                                    {"over_segment", 3}}})}};
  PLDiagram p = pl_from_json(j);
  REQUIRE(p.components.size() == 1);
  REQUIRE(p.components[0].size() == 5);
  CHECK(p.components[0][4].y == -1.0);
  REQUIRE(p.over_data.size() == 1);
  CHECK(p.over_data[0].over_segment == 3);
  CHECK(find_crossings(p).size() == 1);

  // "over" is optional for embedded inputs
  PLDiagram square = pl_from_json(json{
      {"components", json::array({json::array({json::array({0, 0}), json::array({2, 0}),
                                               json::array({2, 2}), json::array({0, 2})})})}});
  CHECK(square.over_data.empty());
  CHECK(find_crossings(square).empty());

  CHECK(code_of([] { pl_from_json(json::array()); }) == Errc::SchemaError);
  CHECK(code_of([] { pl_from_json(json{{"components", 3}}); }) == Errc::SchemaError);
  CHECK(code_of([] {
          pl_from_json(json{{"components", json::array({json::array({json::array({0, 0, 1})})})}});
        }) == Errc::SchemaError);
  CHECK(code_of([] {
          pl_from_json(json{{"components", json::array()}, {"over", json::array({json::object()})}});
        }) == Errc::SchemaError);
}
