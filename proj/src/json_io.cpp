#include "gridknot/json_io.hpp"

#include <string>
#include <vector>

#include "gridknot/errors.hpp"
#include "gridknot/io.hpp"

namespace gridknot {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& what) { fail(Errc::SchemaError, what); }

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

int int_field(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number_integer()) bad(std::string("field \"") + key + "\" is not an integer");
  return v.get<int>();
}

bool bool_field(const json& j, const char* key, bool fallback) {
  if (!j.is_object() || !j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_boolean()) bad(std::string("field \"") + key + "\" is not a boolean");
  return v.get<bool>();
}

std::string string_field(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_string()) bad(std::string("field \"") + key + "\" is not a string");
  return v.get<std::string>();
}

Cell cell_field(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_array() || v.size() != 2 || !v[0].is_number_integer() || !v[1].is_number_integer())
    bad(std::string("field \"") + key + "\" is not a [column, row] pair");
  return {v[0].get<int>(), v[1].get<int>()};
}

json cell_json(Cell c) { return json::array({c.col, c.row}); }

std::vector<int> int_list(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_array()) bad(std::string("field \"") + key + "\" is not an array");
  std::vector<int> out;
  out.reserve(v.size());
  for (const json& e : v) {
    if (!e.is_number_integer()) bad(std::string("field \"") + key + "\" holds a non-integer");
    out.push_back(e.get<int>());
  }
  return out;
}

Axis axis_from(const std::string& s) {
  if (s == "cols") return Axis::Cols;
  if (s == "rows") return Axis::Rows;
  bad("unknown axis \"" + s + "\"");
}

Corner corner_from(const std::string& s) {
  if (s == "sw") return Corner::SW;
  if (s == "se") return Corner::SE;
  if (s == "nw") return Corner::NW;
  if (s == "ne") return Corner::NE;
  bad("unknown corner \"" + s + "\"");
}

MarkerKind marker_from(const std::string& s) {
  if (s == "x") return MarkerKind::X;
  if (s == "o") return MarkerKind::O;
  bad("unknown marker kind \"" + s + "\"");
}

SaddleDir saddle_dir_from(const std::string& s) {
  if (s == "main_to_anti") return SaddleDir::MainToAnti;
  if (s == "anti_to_main") return SaddleDir::AntiToMain;
  bad("unknown saddle direction \"" + s + "\"");
}

CommuteMove commute_from_json(const json& j) {
  CommuteMove out;
  out.axis = axis_from(string_field(j, "axis"));
  out.index = int_field(j, "index");
  out.wrap = bool_field(j, "wrap", false);
  return out;
}

json commute_json(const CommuteMove& m) {
  json j{{"axis", axis_name(m.axis)}, {"index", m.index}};
  if (m.wrap) j["wrap"] = true;
  return j;
}

}  // namespace

const char* axis_name(Axis a) { return a == Axis::Cols ? "cols" : "rows"; }

const char* corner_name(Corner k) {
  switch (k) {
    case Corner::SW: return "sw";
    case Corner::SE: return "se";
    case Corner::NW: return "nw";
    case Corner::NE: return "ne";
  }
  return "sw";
}

const char* marker_kind_name(MarkerKind k) { return k == MarkerKind::X ? "x" : "o"; }

const char* saddle_dir_name(SaddleDir d) {
  return d == SaddleDir::MainToAnti ? "main_to_anti" : "anti_to_main";
}

json diagram_json(const GridDiagram& d) {
  json xs = json::array(), os = json::array();
  for (int c = 0; c < d.index(); ++c) {
    xs.push_back(d.x_row(c));
    os.push_back(d.o_row(c));
  }
  return json{{"n", d.index()}, {"xs", xs}, {"os", os}};
}

GridDiagram diagram_from_json(const json& j) {
  if (j.is_string()) return parse_grid(j.get<std::string>());
  if (!j.is_object()) bad("diagram is neither an object nor a text form string");
  return GridDiagram::make(int_field(j, "n"), int_list(j, "xs"), int_list(j, "os"));
}

json move_json(const Move& m) {
  if (const auto* s = std::get_if<StabMove>(&m))
    return json{{"kind", "stab"},
                {"marker", marker_kind_name(s->marker)},
                {"at", cell_json(s->at)},
                {"corner", corner_name(s->corner)}};
  if (const auto* s = std::get_if<DestabMove>(&m))
    return json{{"kind", "destab"}, {"axis", axis_name(s->axis)}, {"at", cell_json(s->at)}};
  if (const auto* s = std::get_if<CommuteMove>(&m)) {
    json j = commute_json(*s);
    j["kind"] = "commute";
    return j;
  }
  if (const auto* s = std::get_if<TransferMove>(&m))
    return json{{"kind", "transfer"},
                {"crossing", cell_json(s->crossing)},
                {"first", commute_json(s->first)},
                {"second", commute_json(s->second)}};
  if (const auto* s = std::get_if<BirthMove>(&m))
    return json{{"kind", "birth"}, {"cell", cell_json(s->cell)}};
  if (const auto* s = std::get_if<DeathMove>(&m))
    return json{{"kind", "death"}, {"column", s->column}};
  if (const auto* s = std::get_if<SaddleMove>(&m)) {
    json j{{"kind", "saddle"}, {"at", cell_json(s->at)}, {"dir", saddle_dir_name(s->dir)}};
    if (s->use_x) j["use_x"] = true;
    return j;
  }
  return json{{"kind", "identity"}};
}

Move move_from_json(const json& j) {
  std::string kind = string_field(j, "kind");
  if (kind == "stab")
    return StabMove{marker_from(string_field(j, "marker")), cell_field(j, "at"),
                    corner_from(string_field(j, "corner"))};
  if (kind == "destab")
    return DestabMove{axis_from(string_field(j, "axis")), cell_field(j, "at")};
  if (kind == "commute") return commute_from_json(j);
  if (kind == "transfer")
    return TransferMove{cell_field(j, "crossing"), commute_from_json(field(j, "first")),
                        commute_from_json(field(j, "second"))};
  if (kind == "birth") return BirthMove{cell_field(j, "cell")};
  if (kind == "death") return DeathMove{int_field(j, "column")};
  if (kind == "saddle")
    return SaddleMove{cell_field(j, "at"), saddle_dir_from(string_field(j, "dir")),
                      bool_field(j, "use_x", false)};
  if (kind == "identity") return IdentityMove{};
  bad("unknown move kind \"" + kind + "\"");
}

json movie_json(const GridMovie& m) {
  json steps = json::array();
  for (const Move& mv : m.steps) steps.push_back(move_json(mv));
  return json{{"initial", diagram_json(m.initial)}, {"steps", steps}};
}

GridMovie movie_from_json(const json& j) {
  GridMovie out;
  out.initial = diagram_from_json(field(j, "initial"));
  const json& steps = field(j, "steps");
  if (!steps.is_array()) bad("field \"steps\" is not an array");
  for (const json& s : steps) out.steps.push_back(move_from_json(s));
  return out;
}

namespace {

PLPoint point_from(const json& v, const char* what) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
    bad(std::string(what) + " is not an [x, y] pair");
  return {v[0].get<double>(), v[1].get<double>()};
}

}  // namespace

PLDiagram pl_from_json(const json& j) {
  PLDiagram out;
  const json& comps = field(j, "components");
  if (!comps.is_array()) bad("field \"components\" is not an array");
  for (const json& comp : comps) {
    if (!comp.is_array()) bad("a component is not an array of points");
    auto& pts = out.components.emplace_back();
    for (const json& pt : comp) pts.push_back(point_from(pt, "a component point"));
  }
  if (j.is_object() && j.contains("over")) {
    const json& over = j.at("over");
    if (!over.is_array()) bad("field \"over\" is not an array");
    for (const json& entry : over) {
      PLOverChoice choice;
      choice.at = point_from(field(entry, "at"), "field \"at\"");
      choice.over_component = int_field(entry, "over_component");
      choice.over_segment = int_field(entry, "over_segment");
      out.over_data.push_back(choice);
    }
  }
  return out;
}

}  // namespace gridknot
