#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "gridknot/arcword.hpp"
#include "gridknot/errors.hpp"
#include "gridknot/grid.hpp"
#include "gridknot/io.hpp"
#include "gridknot/json_io.hpp"
#include "gridknot/moves.hpp"
#include "gridknot/movie.hpp"
#include "gridknot/pl_import.hpp"
#include "gridknot/render.hpp"
#include "gridknot/search.hpp"
#include "gridknot/templates.hpp"

namespace {

using json = nlohmann::json;
using namespace gridknot;

struct UsageError {
  std::string message;  // reported on stderr, exit 2
};

std::string read_input(const std::string& path) {
  std::ostringstream buf;
  if (path == "-") {
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError{"cannot open " + path};
  buf << in.rdbuf();
  return buf.str();
}

// Diagram files hold either the canonical text form or its JSON record.
GridDiagram load_diagram(const std::string& path) {
  std::string text = read_input(path);
  size_t i = text.find_first_not_of(" \t\r\n");
  if (i != std::string::npos && (text[i] == '{' || text[i] == '"' || text[i] == '['))
    return diagram_from_json(json::parse(text));
  return parse_grid(text);
}

void emit(const json& j, bool pretty) { std::cout << (pretty ? j.dump(2) : j.dump()) << "\n"; }

Axis axis_arg(const std::string& s) {
  if (s == "cols") return Axis::Cols;
  if (s == "rows") return Axis::Rows;
  throw UsageError{"axis must be cols or rows, got \"" + s + "\""};
}

int int_arg(const std::string& s, const char* what) {
  try {
    size_t used = 0;
    int v = std::stoi(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw UsageError{std::string(what) + " must be an integer, got \"" + s + "\""};
}

BoundaryMode mode_arg(const std::string& s) {
  if (s == "closed") return BoundaryMode::Closed;
  if (s == "boundary") return BoundaryMode::Boundary;
  if (s == "planar") return BoundaryMode::PlanarBoundary;
  throw UsageError{"boundary mode must be closed, boundary or planar, got \"" + s + "\""};
}

// One move, given either as --commute axis index [--wrap] or as --move JSON.
Move move_arg(const std::vector<std::string>& commute, bool wrap, const std::string& move_text) {
  if (!commute.empty() && !move_text.empty())
    throw UsageError{"give either --commute or --move, not both"};
  if (!commute.empty())
    return CommuteMove{axis_arg(commute[0]), int_arg(commute[1], "commute index"), wrap};
  if (!move_text.empty()) return move_from_json(json::parse(move_text));
  throw UsageError{"a move is required: --commute axis index, or --move '<json>'"};
}

json box_json(const Box& b) { return json::array({b.x0, b.y0, b.x1, b.y1}); }

json report_json(const GridifyReport& report, bool with_height) {
  json boxes{{"intersection_squares", json::array()},
             {"critical_rectangles", json::array()},
             {"arc_rectangles", json::array()}};
  for (const Box& b : report.boxes.intersection_squares)
    boxes["intersection_squares"].push_back(box_json(b));
  for (const Box& b : report.boxes.critical_rectangles)
    boxes["critical_rectangles"].push_back(box_json(b));
  for (const auto& chain : report.boxes.arc_rectangles) {
    json jc = json::array();
    for (const Box& b : chain) jc.push_back(box_json(b));
    boxes["arc_rectangles"].push_back(jc);
  }
  json out{{"attempts", report.attempts},
           {"rotation", json::array({report.rot_a, report.rot_b, report.rot_c})},
           {"scale_pow10", report.scale_pow10},
           {"boxes", boxes}};
  if (with_height) {
    json rows = json::array();
    for (const ExtremumRow& r : report.extremum_rows)
      rows.push_back(json{{"height", r.height}, {"row", r.row}});
    out["extremum_rows"] = rows;
  }
  return out;
}

json moves_json(const std::vector<Move>& moves) {
  json out = json::array();
  for (const Move& m : moves) out.push_back(move_json(m));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"grid diagrams, grid moves and grid movies"};
  app.require_subcommand(1);
  app.fallthrough();
  bool pretty = false;
  app.add_flag("--pretty", pretty, "human readable output instead of compact JSON");

  std::string in_a, in_b;

  auto* c_validate = app.add_subcommand("validate", "check a diagram and report its index");
  c_validate->add_option("diagram", in_a, "diagram file or -")->required();

  auto* c_trace = app.add_subcommand("trace", "component, crossing and writhe summary");
  c_trace->add_option("diagram", in_a, "diagram file or -")->required();

  auto* c_crossings = app.add_subcommand("crossings", "list every crossing with its sign");
  c_crossings->add_option("diagram", in_a, "diagram file or -")->required();

  std::vector<std::string> commute;
  bool wrap = false;
  std::string move_text;
  auto* c_classify = app.add_subcommand("classify", "classify one move on a diagram");
  c_classify->add_option("--commute", commute, "axis (cols|rows) and index")->expected(2);
  c_classify->add_flag("--wrap", wrap, "wrap-around commutation");
  c_classify->add_option("--move", move_text, "move as a JSON record");
  c_classify->add_option("diagram", in_a, "diagram file or -")->required();

  auto* c_apply = app.add_subcommand("apply", "apply one move and print the diagram");
  c_apply->add_option("--commute", commute, "axis (cols|rows) and index")->expected(2);
  c_apply->add_flag("--wrap", wrap, "wrap-around commutation");
  c_apply->add_option("--move", move_text, "move as a JSON record");
  c_apply->add_option("diagram", in_a, "diagram file or -")->required();

  auto* c_render = app.add_subcommand("render", "draw a diagram (SVG; --pretty for ASCII)");
  c_render->add_option("diagram", in_a, "diagram file or -")->required();

  unsigned seed = 0;
  bool with_height = false;
  auto* c_import = app.add_subcommand("import-pl", "convert a polyline link to a grid diagram");
  c_import->add_option("--seed", seed, "placement seed");
  c_import->add_flag("--with-height", with_height, "order rows by the input height function");
  c_import->add_option("input", in_a, "polyline JSON file or -")->required();

  bool permit_composite = false;
  auto* c_mvalidate = app.add_subcommand("movie-validate", "classify every step of a movie");
  c_mvalidate->add_flag("--permit-composite", permit_composite,
                        "accept composite commutations as steps");
  c_mvalidate->add_option("movie", in_a, "movie JSON file or -")->required();

  auto* c_mstats = app.add_subcommand("movie-stats", "surface statistics of a movie");
  c_mstats->add_option("movie", in_a, "movie JSON file or -")->required();

  std::string templates_path = "data/movie_move_templates.json";
  std::string boundary_mode = "closed";
  int template_id = 0;
  int site_step = 0;
  std::vector<int> site_origin;
  auto* c_mmove = app.add_subcommand("movie-move", "rewrite a movie by a template");
  c_mmove->add_option("--templates", templates_path, "template file")
      ->capture_default_str();
  c_mmove->add_option("--boundary-mode", boundary_mode, "closed, boundary or planar")
      ->capture_default_str();
  c_mmove->add_option("--id", template_id, "template id")->required();
  c_mmove->add_option("--step", site_step, "first rewritten step")->required();
  c_mmove->add_option("--origin", site_origin, "window corner: col row")
      ->expected(2)
      ->required();
  c_mmove->add_option("movie", in_a, "movie JSON file or -")->required();

  int swap_step = 0;
  auto* c_interchange = app.add_subcommand("interchange", "swap two distant adjacent steps");
  c_interchange->add_option("--step", swap_step, "first step of the pair")->required();
  c_interchange->add_option("movie", in_a, "movie JSON file or -")->required();

  SearchBudget budget;
  auto* c_search = app.add_subcommand("search-isotopy",
                                      "prove or refute grid planar isotopy within a budget");
  c_search->add_option("--max-index", budget.max_grid_index, "largest grid index searched")
      ->capture_default_str();
  c_search->add_option("--max-moves", budget.max_moves, "longest certificate searched")
      ->capture_default_str();
  c_search->add_option("--max-states", budget.max_states, "state cap")->capture_default_str();
  c_search->add_option("first", in_a, "diagram file or -")->required();
  c_search->add_option("second", in_b, "diagram file or -")->required();

  std::vector<int> arc_a, arc_b;
  auto* c_align = app.add_subcommand("align-arcs", "planar moves matching one arc to another");
  c_align->add_option("--arc-a", arc_a, "first arc: from-col from-row to-col to-row")
      ->expected(4)
      ->required();
  c_align->add_option("--arc-b", arc_b, "second arc: from-col from-row to-col to-row")
      ->expected(4)
      ->required();
  c_align->add_option("first", in_a, "diagram file or -")->required();
  c_align->add_option("second", in_b, "diagram file or -")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (c_validate->parsed()) {
      GridDiagram d = load_diagram(in_a);
      emit(json{{"n", d.index()}, {"valid", true}}, pretty);
      return 0;
    }
    if (c_trace->parsed()) {
      GridDiagram d = load_diagram(in_a);
      emit(json{{"components", trace(d).size()},
                {"crossings", crossings(d).size()},
                {"writhe", writhe(d)}},
           pretty);
      return 0;
    }
    if (c_crossings->parsed()) {
      GridDiagram d = load_diagram(in_a);
      json list = json::array();
      for (const Crossing& c : crossings(d))
        list.push_back(json{{"col", c.col}, {"row", c.row}, {"sign", c.sign}});
      emit(json{{"crossings", list}, {"writhe", writhe(d)}}, pretty);
      return 0;
    }
    if (c_classify->parsed()) {
      GridDiagram d = load_diagram(in_a);
      Classification c = classify(d, move_arg(commute, wrap, move_text));
      emit(json{{"class", move_class_name(c.cls)},
                {"delta", c.delta_crossings},
                {"separating", c.separating_arcs}},
           pretty);
      return 0;
    }
    if (c_apply->parsed()) {
      GridDiagram d = apply_move(load_diagram(in_a), move_arg(commute, wrap, move_text));
      if (pretty)
        std::cout << serialize(d);
      else
        emit(diagram_json(d), false);
      return 0;
    }
    if (c_render->parsed()) {
      GridDiagram d = load_diagram(in_a);
      std::cout << (pretty ? render_ascii(d) : render_svg(d));
      return 0;
    }
    if (c_import->parsed()) {
      PLDiagram p = pl_from_json(json::parse(read_input(in_a)));
      GridifyOptions opts;
      opts.seed = seed;
      GridifyReport report;
      GridDiagram d =
          with_height ? gridify_with_height(p, opts, &report) : gridify(p, opts, &report);
      if (pretty)
        std::cout << serialize(d);
      else
        emit(json{{"diagram", diagram_json(d)}, {"report", report_json(report, with_height)}},
             false);
      return 0;
    }
    if (c_mvalidate->parsed()) {
      GridMovie m = movie_from_json(json::parse(read_input(in_a)));
      MovieOptions opts;
      opts.allow_composite = permit_composite;
      json classes = json::array();
      for (MoveClass cls : validate_movie(m, opts)) classes.push_back(move_class_name(cls));
      emit(json{{"classes", classes}, {"valid", true}}, pretty);
      return 0;
    }
    if (c_mstats->parsed()) {
      MovieStats s = movie_stats(movie_from_json(json::parse(read_input(in_a))));
      emit(json{{"births", s.births},
                {"deaths", s.deaths},
                {"saddles", s.saddles},
                {"euler_characteristic", s.euler_characteristic},
                {"component_timeline", s.component_timeline},
                {"surface_pieces", s.surface_pieces},
                {"boundary_circles", s.boundary_circles},
                {"genus", s.genus ? json(*s.genus) : json(nullptr)}},
           pretty);
      return 0;
    }
    if (c_mmove->parsed()) {
      GridMovie m = movie_from_json(json::parse(read_input(in_a)));
      auto templates =
          boundary_class_filter(load_templates(read_input(templates_path)), mode_arg(boundary_mode));
      MovieSite site{site_step, {site_origin[0], site_origin[1]}};
      bool saw_id = false;
      for (const MovieMoveTemplate& t : templates) {
        if (t.id != template_id) continue;
        saw_id = true;
        try {
          emit(movie_json(apply_movie_move(m, t, site)), pretty);
          return 0;
        } catch (const GridError& e) {
          if (e.code() != Errc::NoMatch && e.code() != Errc::ResultInvalid) throw;
        }
      }
      fail(Errc::NoMatch, saw_id ? "no variant of template " + std::to_string(template_id) +
                                       " rewrites the movie at that site"
                                 : "no template with id " + std::to_string(template_id) +
                                       " in this boundary mode");
    }
    if (c_interchange->parsed()) {
      GridMovie m = movie_from_json(json::parse(read_input(in_a)));
      emit(movie_json(interchange_distant(m, swap_step)), pretty);
      return 0;
    }
    if (c_search->parsed()) {
      GridDiagram a = load_diagram(in_a);
      GridDiagram b = load_diagram(in_b);
      SearchResult r = bfs_equivalent(a, b, budget);
      switch (r.verdict) {
        case SearchVerdict::Found:
          emit(json{{"verdict", "found"}, {"moves", moves_json(r.certificate->moves)}}, pretty);
          return 0;
        case SearchVerdict::DistinctByInvariant:
          emit(json{{"verdict", "distinct"},
                    {"separating_invariant", r.separating_invariant}},
               pretty);
          return 1;
        case SearchVerdict::BudgetExhausted:
          break;
      }
      emit(json{{"verdict", "exhausted"}}, pretty);
      return 2;
    }
    if (c_align->parsed()) {
      GridDiagram a = load_diagram(in_a);
      GridDiagram b = load_diagram(in_b);
      GridArc ga = extract_arc(a, {arc_a[0], arc_a[1]}, {arc_a[2], arc_a[3]});
      GridArc gb = extract_arc(b, {arc_b[0], arc_b[1]}, {arc_b[2], arc_b[3]});
      emit(json{{"moves", moves_json(align_arcs(a, ga, b, gb))}}, pretty);
      return 0;
    }
  } catch (const GridError& e) {
    std::string code = errc_name(e.code());
    std::string what = e.what();
    std::string message =
        what.rfind(code + ": ", 0) == 0 ? what.substr(code.size() + 2) : what;
    emit(json{{"error", json{{"code", code}, {"message", message}}}}, pretty);
    return 1;
  } catch (const json::parse_error& e) {
    emit(json{{"error", json{{"code", "ParseError"}, {"message", e.what()}}}}, pretty);
    return 1;
  } catch (const UsageError& u) {
    std::cerr << u.message << "\n";
    return 2;
  }
  return 2;
}
