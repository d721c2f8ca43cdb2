#pragma once

#include <json.hpp>

#include "gridknot/grid.hpp"
#include "gridknot/movie.hpp"
#include "gridknot/moves.hpp"
#include "gridknot/pl_import.hpp"

namespace gridknot {

// JSON forms. Diagrams: {"n": 5, "xs": [...], "os": [...]}; readers also
// accept the canonical text form as a JSON string. Moves carry a "kind" tag
// and the fields of the move struct; movies are {"initial": ..., "steps":
// [...]}. Readers throw SchemaError for shape problems and pass domain
// validation errors (NotPermutation, ...) through unchanged.

nlohmann::json diagram_json(const GridDiagram& d);
GridDiagram diagram_from_json(const nlohmann::json& j);

nlohmann::json move_json(const Move& m);
Move move_from_json(const nlohmann::json& j);

nlohmann::json movie_json(const GridMovie& m);
GridMovie movie_from_json(const nlohmann::json& j);

// Polyline links: {"components": [[[x, y], ...], ...], "over": [{"at":
// [x, y], "over_component": i, "over_segment": j}, ...]}. "over" may be
// omitted when the components never cross.
PLDiagram pl_from_json(const nlohmann::json& j);

const char* axis_name(Axis a);
const char* corner_name(Corner k);
const char* marker_kind_name(MarkerKind k);
const char* saddle_dir_name(SaddleDir d);

}  // namespace gridknot
