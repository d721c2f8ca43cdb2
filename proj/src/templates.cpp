#include "gridknot/templates.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "gridknot/errors.hpp"
#include "gridknot/json_io.hpp"
#include "gridknot/moves.hpp"

namespace gridknot {
namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& msg) { fail(Errc::SchemaError, msg); }

std::string cell_str(Cell c) {
  return "(" + std::to_string(c.col) + "," + std::to_string(c.row) + ")";
}

bool has_marker(const SubDiagram& s, Cell cell, MarkerKind kind) {
  Marker m{cell, kind};
  return std::binary_search(s.markers.begin(), s.markers.end(), m);
}

// Window coordinates of the frame's X marker in the given column, if any.
std::optional<int> x_row_at(const SubDiagram& s, int col) {
  for (const Marker& m : s.markers)
    if (m.kind == MarkerKind::X && m.cell.col == col) return m.cell.row;
  return std::nullopt;
}

Corner make_corner(bool east, bool north) {
  return north ? (east ? Corner::NE : Corner::NW) : (east ? Corner::SE : Corner::SW);
}

SaddleDir flip_dir(SaddleDir d) {
  return d == SaddleDir::MainToAnti ? SaddleDir::AntiToMain : SaddleDir::MainToAnti;
}

}  // namespace

bool same_pattern(const SubDiagram& a, const SubDiagram& b) {
  return a.width == b.width && a.height == b.height && a.markers == b.markers &&
         a.boundary_arcs == b.boundary_arcs;
}

SubDiagram window(const GridDiagram& d, Cell origin, int width, int height) {
  int n = d.index();
  if (width < 1 || height < 1 || origin.col < 0 || origin.row < 0 ||
      origin.col + width > n || origin.row + height > n)
    fail(Errc::IndexOutOfRange, "window at " + cell_str(origin) + " of extent " +
                                    std::to_string(width) + "x" + std::to_string(height) +
                                    " leaves the grid");
  SubDiagram sub;
  sub.origin = origin;
  sub.width = width;
  sub.height = height;
  int oc = origin.col, orow = origin.row;
  for (int c = oc; c < oc + width; ++c) {
    int xr = d.x_row(c), orr = d.o_row(c);
    if (xr >= orow && xr < orow + height)
      sub.markers.push_back({{c - oc, xr - orow}, MarkerKind::X});
    if (orr >= orow && orr < orow + height)
      sub.markers.push_back({{c - oc, orr - orow}, MarkerKind::O});
    // Vertical strand of column c, drawn from the X up or down to the O.
    auto [lo, hi] = std::minmax(xr, orr);
    if (lo == hi) continue;  // point component, no strand
    ArcDir dir = orr > xr ? ArcDir::Up : ArcDir::Down;
    if (lo < orow && hi >= orow) sub.boundary_arcs.push_back({Edge::Bottom, c - oc, dir});
    if (lo <= orow + height - 1 && hi >= orow + height)
      sub.boundary_arcs.push_back({Edge::Top, c - oc, dir});
  }
  for (int r = orow; r < orow + height; ++r) {
    int xc = d.x_col(r), ocl = d.o_col(r);
    auto [lo, hi] = std::minmax(xc, ocl);
    if (lo == hi) continue;
    ArcDir dir = xc > ocl ? ArcDir::Right : ArcDir::Left;
    if (lo < oc && hi >= oc) sub.boundary_arcs.push_back({Edge::Left, r - orow, dir});
    if (lo <= oc + width - 1 && hi >= oc + width)
      sub.boundary_arcs.push_back({Edge::Right, r - orow, dir});
  }
  std::sort(sub.markers.begin(), sub.markers.end());
  std::sort(sub.boundary_arcs.begin(), sub.boundary_arcs.end());
  return sub;
}

BoundaryClass classify_boundary(const CriticalContent& c) {
  if (c.births + c.deaths + c.saddles > 0) return BoundaryClass::Interior;
  if (c.r1 + c.r2 + c.r3 > 0) return BoundaryClass::Boundary;
  return BoundaryClass::PlanarBoundary;
}

std::vector<MovieMoveTemplate> boundary_class_filter(
    const std::vector<MovieMoveTemplate>& templates, BoundaryMode mode) {
  std::vector<MovieMoveTemplate> out;
  for (const MovieMoveTemplate& t : templates) {
    if (mode == BoundaryMode::Boundary && t.boundary_class == BoundaryClass::Interior) continue;
    if (mode == BoundaryMode::PlanarBoundary && t.boundary_class != BoundaryClass::PlanarBoundary)
      continue;
    out.push_back(t);
  }
  return out;
}

namespace {

// --- translation of a fragment step into ambient coordinates ---------------

CommuteMove translate_commute(CommuteMove s, Cell o) {
  s.index += s.axis == Axis::Cols ? o.col : o.row;
  return s;
}

Move translate_move(Move mv, Cell o) {
  if (auto* s = std::get_if<StabMove>(&mv)) {
    s->at.col += o.col;
    s->at.row += o.row;
  } else if (auto* t = std::get_if<DestabMove>(&mv)) {
    t->at.col += o.col;
    t->at.row += o.row;
  } else if (auto* c = std::get_if<CommuteMove>(&mv)) {
    *c = translate_commute(*c, o);
  } else if (auto* tr = std::get_if<TransferMove>(&mv)) {
    tr->crossing.col += o.col;
    tr->crossing.row += o.row;
    tr->first = translate_commute(tr->first, o);
    tr->second = translate_commute(tr->second, o);
  } else if (auto* b = std::get_if<BirthMove>(&mv)) {
    b->cell.col += o.col;
    b->cell.row += o.row;
  } else if (auto* dd = std::get_if<DeathMove>(&mv)) {
    dd->column += o.col;
  } else if (auto* sa = std::get_if<SaddleMove>(&mv)) {
    sa->at.col += o.col;
    sa->at.row += o.row;
  }
  return mv;
}

// A step stays inside the window when every line it reads or writes lies in
// the window's ranges. Birth seams may sit one past the last window line.
bool support_in_window(const GridDiagram& d, const Move& mv, Cell origin, int w, int h) {
  MoveSupport sup = move_support(d, mv);
  int slack = std::holds_alternative<BirthMove>(mv) ? 1 : 0;
  for (int v : sup.cols)
    if (v < origin.col || v > origin.col + w - 1 + slack) return false;
  for (int v : sup.rows)
    if (v < origin.row || v > origin.row + h - 1 + slack) return false;
  return true;
}

// --- JSON parsing -----------------------------------------------------------

const json& jfield(const json& j, const char* key) {
  if (!j.is_object()) bad(std::string("expected an object holding '") + key + "'");
  auto it = j.find(key);
  if (it == j.end()) bad(std::string("missing field '") + key + "'");
  return *it;
}

int jint(const json& j, const char* what) {
  if (!j.is_number_integer()) bad(std::string(what) + " must be an integer");
  return j.get<int>();
}

std::string jstring(const json& j, const char* what) {
  if (!j.is_string()) bad(std::string(what) + " must be a string");
  return j.get<std::string>();
}

void check_keys(const json& j, std::initializer_list<const char*> allowed, const char* what) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* k : allowed)
      if (it.key() == k) known = true;
    if (!known) bad(std::string("unknown field '") + it.key() + "' in " + what);
  }
}

SubDiagram parse_subdiagram(const json& j) {
  if (!j.is_object()) bad("subdiagram must be an object");
  check_keys(j, {"extent", "markers", "arcs"}, "subdiagram");
  const json& ext = jfield(j, "extent");
  if (!ext.is_array() || ext.size() != 2) bad("extent must be [width, height]");
  SubDiagram sub;
  sub.width = jint(ext[0], "width");
  sub.height = jint(ext[1], "height");
  if (sub.width < 1 || sub.height < 1) bad("extent must be positive");
  if (j.contains("markers")) {
    const json& ms = j.at("markers");
    if (!ms.is_array()) bad("markers must be an array");
    for (const json& e : ms) {
      if (!e.is_array() || e.size() != 3) bad("marker must be [kind, col, row]");
      std::string kind = jstring(e[0], "marker kind");
      if (kind != "x" && kind != "o") bad("marker kind must be \"x\" or \"o\"");
      Marker m{{jint(e[1], "marker col"), jint(e[2], "marker row")},
               kind == "x" ? MarkerKind::X : MarkerKind::O};
      if (m.cell.col < 0 || m.cell.col >= sub.width || m.cell.row < 0 ||
          m.cell.row >= sub.height)
        bad("marker " + cell_str(m.cell) + " outside the window");
      sub.markers.push_back(m);
    }
  }
  if (j.contains("arcs")) {
    const json& as = j.at("arcs");
    if (!as.is_array()) bad("arcs must be an array");
    for (const json& e : as) {
      if (!e.is_array() || e.size() != 3) bad("arc must be [edge, offset, dir]");
      std::string edge = jstring(e[0], "arc edge");
      std::string dir = jstring(e[2], "arc dir");
      BoundaryArc a;
      if (edge == "left")
        a.edge = Edge::Left;
      else if (edge == "right")
        a.edge = Edge::Right;
      else if (edge == "bottom")
        a.edge = Edge::Bottom;
      else if (edge == "top")
        a.edge = Edge::Top;
      else
        bad("arc edge must be left, right, bottom or top");
      a.offset = jint(e[1], "arc offset");
      if (dir == "up")
        a.dir = ArcDir::Up;
      else if (dir == "down")
        a.dir = ArcDir::Down;
      else if (dir == "left")
        a.dir = ArcDir::Left;
      else if (dir == "right")
        a.dir = ArcDir::Right;
      else
        bad("arc dir must be up, down, left or right");
      bool horizontal_edge = a.edge == Edge::Bottom || a.edge == Edge::Top;
      bool vertical_dir = a.dir == ArcDir::Up || a.dir == ArcDir::Down;
      if (horizontal_edge != vertical_dir)
        bad("arc dir does not fit its edge: strands cross bottom/top edges "
            "vertically and left/right edges horizontally");
      int span = horizontal_edge ? sub.width : sub.height;
      if (a.offset < 0 || a.offset >= span) bad("arc offset outside the window edge");
      sub.boundary_arcs.push_back(a);
    }
  }
  std::sort(sub.markers.begin(), sub.markers.end());
  std::sort(sub.boundary_arcs.begin(), sub.boundary_arcs.end());
  if (std::adjacent_find(sub.markers.begin(), sub.markers.end()) != sub.markers.end())
    bad("duplicate marker in subdiagram");
  if (std::adjacent_find(sub.boundary_arcs.begin(), sub.boundary_arcs.end()) !=
      sub.boundary_arcs.end())
    bad("duplicate boundary arc in subdiagram");
  // At most one marker of each kind per grid line, as in any diagram window.
  for (MarkerKind k : {MarkerKind::X, MarkerKind::O}) {
    std::set<int> cols, rows;
    for (const Marker& m : sub.markers) {
      if (m.kind != k) continue;
      if (!cols.insert(m.cell.col).second) bad("two markers of one kind share a column");
      if (!rows.insert(m.cell.row).second) bad("two markers of one kind share a row");
    }
  }
  return sub;
}

std::vector<MovieFrame> parse_fragment(const json& entry, const char* key) {
  const json& arr = jfield(entry, key);
  if (!arr.is_array() || arr.empty())
    bad(std::string("'") + key + "' must be a non-empty array of frames");
  std::vector<MovieFrame> frames;
  for (const json& f : arr) {
    if (!f.is_object()) bad("frame must be an object");
    check_keys(f, {"subdiagram", "move"}, "frame");
    MovieFrame frame;
    frame.sub = parse_subdiagram(jfield(f, "subdiagram"));
    if (f.contains("move")) frame.step = move_from_json(f.at("move"));
    frames.push_back(std::move(frame));
  }
  if (!std::holds_alternative<IdentityMove>(frames.back().step))
    bad(std::string("final frame of '") + key + "' carries a move");
  return frames;
}

CriticalContent parse_critical(const json& entry) {
  CriticalContent c;
  if (!entry.contains("critical")) return c;
  const json& j = entry.at("critical");
  if (!j.is_object()) bad("critical must be an object");
  check_keys(j, {"births", "deaths", "saddles", "r1", "r2", "r3", "transfer"}, "critical");
  auto get = [&](const char* key, int& slot) {
    if (!j.contains(key)) return;
    slot = jint(j.at(key), key);
    if (slot < 0) bad(std::string(key) + " must be non-negative");
  };
  get("births", c.births);
  get("deaths", c.deaths);
  get("saddles", c.saddles);
  get("r1", c.r1);
  get("r2", c.r2);
  get("r3", c.r3);
  get("transfer", c.transfer);
  return c;
}

SymmetryFlags parse_symmetry(const json& entry) {
  SymmetryFlags f;
  if (!entry.contains("symmetry")) return f;
  const json& j = entry.at("symmetry");
  if (!j.is_object()) bad("symmetry must be an object");
  check_keys(j, {"reflect_h", "reflect_v", "swap_crossings", "time_reverse"}, "symmetry");
  auto get = [&](const char* key, bool& slot) {
    if (!j.contains(key)) return;
    if (!j.at(key).is_boolean()) bad(std::string(key) + " must be a boolean");
    slot = j.at(key).get<bool>();
  };
  get("reflect_h", f.reflect_h);
  get("reflect_v", f.reflect_v);
  get("swap_crossings", f.swap_crossings);
  get("time_reverse", f.time_reverse);
  return f;
}

BoundaryClass parse_boundary_class(const json& j) {
  std::string s = jstring(j, "boundary_class");
  if (s == "interior") return BoundaryClass::Interior;
  if (s == "boundary") return BoundaryClass::Boundary;
  if (s == "planar_boundary") return BoundaryClass::PlanarBoundary;
  bad("boundary_class must be interior, boundary or planar_boundary");
}

// --- symmetry transforms ----------------------------------------------------

// Mirror across a horizontal axis: row r of an h-row window goes to h-1-r.
SubDiagram hflip_sub(const SubDiagram& s) {
  SubDiagram out = s;
  for (Marker& m : out.markers) m.cell.row = s.height - 1 - m.cell.row;
  for (BoundaryArc& a : out.boundary_arcs) {
    switch (a.edge) {
      case Edge::Bottom: a.edge = Edge::Top; break;
      case Edge::Top: a.edge = Edge::Bottom; break;
      case Edge::Left:
      case Edge::Right: a.offset = s.height - 1 - a.offset; break;
    }
    if (a.dir == ArcDir::Up)
      a.dir = ArcDir::Down;
    else if (a.dir == ArcDir::Down)
      a.dir = ArcDir::Up;
  }
  std::sort(out.markers.begin(), out.markers.end());
  std::sort(out.boundary_arcs.begin(), out.boundary_arcs.end());
  return out;
}

Move hflip_move(Move mv, int h) {
  if (auto* s = std::get_if<StabMove>(&mv)) {
    s->at.row = h - 1 - s->at.row;
    s->corner = make_corner(corner_east(s->corner), !corner_north(s->corner));
  } else if (auto* t = std::get_if<DestabMove>(&mv)) {
    t->at.row = t->axis == Axis::Cols ? h - 2 - t->at.row : h - 1 - t->at.row;
  } else if (auto* c = std::get_if<CommuteMove>(&mv)) {
    if (c->axis == Axis::Rows && !c->wrap) c->index = h - 2 - c->index;
  } else if (auto* tr = std::get_if<TransferMove>(&mv)) {
    tr->crossing.row = h - 1 - tr->crossing.row;
    for (CommuteMove* c : {&tr->first, &tr->second})
      if (c->axis == Axis::Rows && !c->wrap) c->index = h - 2 - c->index;
  } else if (auto* b = std::get_if<BirthMove>(&mv)) {
    b->cell.row = h - b->cell.row;  // row seam
  } else if (auto* sa = std::get_if<SaddleMove>(&mv)) {
    sa->at.row = h - 2 - sa->at.row;
    sa->dir = flip_dir(sa->dir);
  }
  return mv;  // deaths name a column, unaffected
}

// Mirror across a vertical axis: column c of a w-column window goes to w-1-c.
SubDiagram vflip_sub(const SubDiagram& s) {
  SubDiagram out = s;
  for (Marker& m : out.markers) m.cell.col = s.width - 1 - m.cell.col;
  for (BoundaryArc& a : out.boundary_arcs) {
    switch (a.edge) {
      case Edge::Left: a.edge = Edge::Right; break;
      case Edge::Right: a.edge = Edge::Left; break;
      case Edge::Bottom:
      case Edge::Top: a.offset = s.width - 1 - a.offset; break;
    }
    if (a.dir == ArcDir::Left)
      a.dir = ArcDir::Right;
    else if (a.dir == ArcDir::Right)
      a.dir = ArcDir::Left;
  }
  std::sort(out.markers.begin(), out.markers.end());
  std::sort(out.boundary_arcs.begin(), out.boundary_arcs.end());
  return out;
}

Move vflip_move(Move mv, int w) {
  if (auto* s = std::get_if<StabMove>(&mv)) {
    s->at.col = w - 1 - s->at.col;
    s->corner = make_corner(!corner_east(s->corner), corner_north(s->corner));
  } else if (auto* t = std::get_if<DestabMove>(&mv)) {
    t->at.col = t->axis == Axis::Cols ? w - 1 - t->at.col : w - 2 - t->at.col;
  } else if (auto* c = std::get_if<CommuteMove>(&mv)) {
    if (c->axis == Axis::Cols && !c->wrap) c->index = w - 2 - c->index;
  } else if (auto* tr = std::get_if<TransferMove>(&mv)) {
    tr->crossing.col = w - 1 - tr->crossing.col;
    for (CommuteMove* c : {&tr->first, &tr->second})
      if (c->axis == Axis::Cols && !c->wrap) c->index = w - 2 - c->index;
  } else if (auto* b = std::get_if<BirthMove>(&mv)) {
    b->cell.col = w - b->cell.col;  // column seam
  } else if (auto* dd = std::get_if<DeathMove>(&mv)) {
    dd->column = w - 1 - dd->column;
  } else if (auto* sa = std::get_if<SaddleMove>(&mv)) {
    sa->at.col = w - 2 - sa->at.col;
    sa->dir = flip_dir(sa->dir);
  }
  return mv;
}

// Exchange over- and under-strands: transpose the window and swap marker
// kinds, so horizontal strands become the always-over verticals.
SubDiagram tpose_sub(const SubDiagram& s) {
  SubDiagram out;
  out.origin = s.origin;
  out.width = s.height;
  out.height = s.width;
  for (Marker m : s.markers) {
    std::swap(m.cell.col, m.cell.row);
    m.kind = m.kind == MarkerKind::X ? MarkerKind::O : MarkerKind::X;
    out.markers.push_back(m);
  }
  for (BoundaryArc a : s.boundary_arcs) {
    switch (a.edge) {
      case Edge::Bottom: a.edge = Edge::Left; break;
      case Edge::Left: a.edge = Edge::Bottom; break;
      case Edge::Top: a.edge = Edge::Right; break;
      case Edge::Right: a.edge = Edge::Top; break;
    }
    switch (a.dir) {
      case ArcDir::Up: a.dir = ArcDir::Right; break;
      case ArcDir::Right: a.dir = ArcDir::Up; break;
      case ArcDir::Down: a.dir = ArcDir::Left; break;
      case ArcDir::Left: a.dir = ArcDir::Down; break;
    }
    out.boundary_arcs.push_back(a);
  }
  std::sort(out.markers.begin(), out.markers.end());
  std::sort(out.boundary_arcs.begin(), out.boundary_arcs.end());
  return out;
}

Move tpose_move(Move mv, const SubDiagram& before) {
  if (auto* s = std::get_if<StabMove>(&mv)) {
    s->marker = s->marker == MarkerKind::X ? MarkerKind::O : MarkerKind::X;
    std::swap(s->at.col, s->at.row);
    s->corner = make_corner(corner_north(s->corner), corner_east(s->corner));
  } else if (auto* t = std::get_if<DestabMove>(&mv)) {
    t->axis = t->axis == Axis::Cols ? Axis::Rows : Axis::Cols;
    std::swap(t->at.col, t->at.row);
  } else if (auto* c = std::get_if<CommuteMove>(&mv)) {
    c->axis = c->axis == Axis::Cols ? Axis::Rows : Axis::Cols;
  } else if (auto* tr = std::get_if<TransferMove>(&mv)) {
    std::swap(tr->crossing.col, tr->crossing.row);
    for (CommuteMove* c : {&tr->first, &tr->second})
      c->axis = c->axis == Axis::Cols ? Axis::Rows : Axis::Cols;
  } else if (auto* b = std::get_if<BirthMove>(&mv)) {
    std::swap(b->cell.col, b->cell.row);
  } else if (auto* dd = std::get_if<DeathMove>(&mv)) {
    // The disappearing point's row becomes its column in the transpose.
    std::optional<int> row = x_row_at(before, dd->column);
    if (!row) bad("crossing swap needs the disappearing point inside the window");
    dd->column = *row;
  } else if (auto* sa = std::get_if<SaddleMove>(&mv)) {
    std::swap(sa->at.col, sa->at.row);
    sa->use_x = !sa->use_x;
  }
  return mv;
}

// --- time reversal ----------------------------------------------------------

std::optional<GridDiagram> realize(const SubDiagram& s) {
  if (s.width != s.height) return std::nullopt;
  int n = s.width;
  std::vector<int> xs(static_cast<size_t>(n), -1), os(static_cast<size_t>(n), -1);
  for (const Marker& m : s.markers)
    (m.kind == MarkerKind::X ? xs : os)[static_cast<size_t>(m.cell.col)] = m.cell.row;
  for (int v : xs)
    if (v < 0) return std::nullopt;
  for (int v : os)
    if (v < 0) return std::nullopt;
  try {
    return GridDiagram::make(n, xs, os);
  } catch (const GridError&) {
    return std::nullopt;
  }
}

// Invert a fragment step against the frame it acts on, mirroring the
// library's inverse so time-reversed templates match reversed film strips.
Move window_inverse(const SubDiagram& sub, const Move& mv) {
  if (const auto* s = std::get_if<StabMove>(&mv)) {
    int kcol = s->at.col + (corner_east(s->corner) ? 1 : 0);
    return DestabMove{Axis::Cols, {kcol, s->at.row}};
  }
  if (const auto* t = std::get_if<DestabMove>(&mv)) {
    int c = t->at.col, r = t->at.row;
    std::vector<Cell> candidates =
        t->axis == Axis::Cols
            ? std::vector<Cell>{{c - 1, r}, {c - 1, r + 1}, {c + 1, r}, {c + 1, r + 1}}
            : std::vector<Cell>{{c, r - 1}, {c + 1, r - 1}, {c, r + 1}, {c + 1, r + 1}};
    for (Cell a : candidates) {
      if (a.col < 0 || a.col >= sub.width || a.row < 0 || a.row >= sub.height) continue;
      bool member_is_x = t->axis == Axis::Cols ? has_marker(sub, {c, a.row}, MarkerKind::X)
                                               : has_marker(sub, {a.col, r}, MarkerKind::X);
      bool ok = member_is_x ? has_marker(sub, a, MarkerKind::O)
                            : has_marker(sub, a, MarkerKind::X);
      if (!ok) continue;
      MarkerKind kind = has_marker(sub, a, MarkerKind::X) ? MarkerKind::X : MarkerKind::O;
      if (t->axis == Axis::Cols) {
        bool anchor_west = a.col < c;
        Corner k = anchor_west ? (a.row == r + 1 ? Corner::NE : Corner::SE)
                               : (a.row == r + 1 ? Corner::NW : Corner::SW);
        return StabMove{kind, {std::min(a.col, c), r}, k};
      }
      bool anchor_south = a.row < r;
      Corner k = anchor_south ? (a.col == c + 1 ? Corner::NE : Corner::NW)
                              : (a.col == c + 1 ? Corner::SE : Corner::SW);
      return StabMove{kind, {c, std::min(a.row, r)}, k};
    }
    bad("time reversal cannot rebuild the pair removed at " + cell_str(t->at));
  }
  if (const auto* tr = std::get_if<TransferMove>(&mv)) {
    std::optional<GridDiagram> d = realize(sub);
    if (!d) bad("time reversal of a strand transfer needs a self-contained window");
    return inverse(*d, Move{*tr});
  }
  if (const auto* b = std::get_if<BirthMove>(&mv)) return DeathMove{b->cell.col};
  if (const auto* dd = std::get_if<DeathMove>(&mv)) {
    std::optional<int> row = x_row_at(sub, dd->column);
    if (!row) bad("time reversal needs the disappearing point inside the window");
    return BirthMove{{dd->column, *row}};
  }
  if (const auto* sa = std::get_if<SaddleMove>(&mv)) {
    SaddleMove out = *sa;
    out.dir = flip_dir(out.dir);
    return out;
  }
  return mv;  // commutes and identities are their own reverses
}

std::vector<MovieFrame> reverse_frames(const std::vector<MovieFrame>& frames) {
  size_t k = frames.size();
  std::vector<MovieFrame> out(k);
  for (size_t j = 0; j < k; ++j) out[j].sub = frames[k - 1 - j].sub;
  for (size_t j = 0; j + 1 < k; ++j) {
    const MovieFrame& src = frames[k - 2 - j];
    out[j].step = window_inverse(src.sub, src.step);
  }
  return out;
}

template <class SubF, class MoveF>
MovieMoveTemplate map_template(const MovieMoveTemplate& t, SubF sub_fn, MoveF move_fn) {
  auto go = [&](const std::vector<MovieFrame>& frames) {
    std::vector<MovieFrame> out;
    for (const MovieFrame& f : frames) out.push_back({sub_fn(f.sub), move_fn(f.step, f.sub)});
    return out;
  };
  MovieMoveTemplate r = t;
  r.left = go(t.left);
  r.right = go(t.right);
  return r;
}

MovieMoveTemplate reverse_template(const MovieMoveTemplate& t) {
  MovieMoveTemplate r = t;
  r.left = reverse_frames(t.left);
  r.right = reverse_frames(t.right);
  std::swap(r.critical.births, r.critical.deaths);
  return r;
}

bool size_preserving(const MovieMoveTemplate& t) {
  for (const std::vector<MovieFrame>* frag : {&t.left, &t.right})
    for (const MovieFrame& f : *frag)
      if (!(std::holds_alternative<CommuteMove>(f.step) ||
            std::holds_alternative<TransferMove>(f.step) ||
            std::holds_alternative<SaddleMove>(f.step) ||
            std::holds_alternative<IdentityMove>(f.step)))
        return false;
  return true;
}

std::vector<MovieMoveTemplate> symmetry_closure(const MovieMoveTemplate& base,
                                                const SymmetryFlags& flags) {
  // Reflections mirror window contents in place. When a fragment changes the
  // grid size, the mirrored window would sit at a different spot in every
  // still, so no fixed origin could ever match the result.
  if ((flags.reflect_h || flags.reflect_v) && !size_preserving(base))
    bad("reflection symmetry needs steps that keep the grid size");
  std::vector<MovieMoveTemplate> out{base};
  auto push = [&](MovieMoveTemplate t) {
    for (const MovieMoveTemplate& u : out)
      if (u.left == t.left && u.right == t.right) return;
    out.push_back(std::move(t));
  };
  for (size_t i = 0; i < out.size(); ++i) {
    MovieMoveTemplate cur = out[i];  // copy: out grows while we iterate
    // A transform can be inadmissible on a derived variant even though it
    // succeeded on the base (reversing a death needs the vanished point in
    // the window). Skip those; only the author's own fragment may error.
    auto attempt = [&](auto&& make) {
      if (i == 0) {
        push(make());
        return;
      }
      try {
        push(make());
      } catch (const GridError& err) {
        if (err.code() != Errc::SchemaError) throw;
      }
    };
    if (flags.reflect_h)
      attempt([&] {
        return map_template(cur, hflip_sub, [](const Move& m, const SubDiagram& s) {
          return hflip_move(m, s.height);
        });
      });
    if (flags.reflect_v)
      attempt([&] {
        return map_template(cur, vflip_sub, [](const Move& m, const SubDiagram& s) {
          return vflip_move(m, s.width);
        });
      });
    if (flags.swap_crossings)
      attempt([&] {
        return map_template(cur, tpose_sub, [](const Move& m, const SubDiagram& s) {
          return tpose_move(m, s);
        });
      });
    if (flags.time_reverse) attempt([&] { return reverse_template(cur); });
  }
  return out;
}

std::pair<MovieMoveTemplate, SymmetryFlags> parse_entry(const json& e) {
  if (!e.is_object()) bad("template entry must be an object");
  check_keys(e, {"id", "left", "right", "symmetry", "critical", "boundary_class"},
             "template entry");
  MovieMoveTemplate t;
  t.id = jint(jfield(e, "id"), "id");
  if (t.id < 1) bad("id must be positive");
  t.left = parse_fragment(e, "left");
  t.right = parse_fragment(e, "right");
  t.critical = parse_critical(e);
  t.boundary_class = e.contains("boundary_class") ? parse_boundary_class(e.at("boundary_class"))
                                                  : classify_boundary(t.critical);
  int w = t.left.front().sub.width, h = t.left.front().sub.height;
  for (const std::vector<MovieFrame>* frag : {&t.left, &t.right})
    for (const MovieFrame& f : *frag)
      if (f.sub.width != w || f.sub.height != h) bad("frames disagree on the window extent");
  if (!same_pattern(t.left.front().sub, t.right.front().sub) ||
      !same_pattern(t.left.back().sub, t.right.back().sub))
    bad("left and right fragments disagree at their endpoints");
  return {std::move(t), parse_symmetry(e)};
}

}  // namespace

std::vector<MovieMoveTemplate> load_templates(const std::string& json_text) {
  if (json_text.find_first_not_of(" \t\r\n") == std::string::npos) return {};
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    bad(std::string("template file is not valid JSON: ") + e.what());
  }
  const json* arr = &root;
  if (root.is_object()) {
    check_keys(root, {"format", "templates"}, "template file");
    if (jint(jfield(root, "format"), "format") != 1) bad("unsupported template format");
    arr = &jfield(root, "templates");
  }
  if (!arr->is_array()) bad("template file must hold an array of templates");
  std::vector<MovieMoveTemplate> out;
  for (const json& e : *arr) {
    auto [base, flags] = parse_entry(e);
    for (MovieMoveTemplate& t : symmetry_closure(base, flags)) out.push_back(std::move(t));
  }
  return out;
}

GridMovie apply_movie_move(const GridMovie& m, const MovieMoveTemplate& t,
                           const MovieSite& site) {
  if (t.left.empty() || t.right.empty()) bad("template has an empty fragment");
  int kl = static_cast<int>(t.left.size()), kr = static_cast<int>(t.right.size());
  int w = t.left.front().sub.width, h = t.left.front().sub.height;
  std::vector<GridDiagram> orig = stills(m);
  int step_count = static_cast<int>(m.steps.size());
  if (site.step < 0 || site.step + kl - 1 > step_count)
    fail(Errc::NoMatch, "site at step " + std::to_string(site.step) + " leaves the film strip");
  for (int j = 0; j < kl; ++j) {
    SubDiagram got;
    try {
      got = window(orig[static_cast<size_t>(site.step + j)], site.origin, w, h);
    } catch (const GridError&) {
      fail(Errc::NoMatch, "window leaves the grid at frame " + std::to_string(j));
    }
    if (!same_pattern(got, t.left[static_cast<size_t>(j)].sub))
      fail(Errc::NoMatch, "picture differs at frame " + std::to_string(j));
  }
  for (int j = 0; j + 1 < kl; ++j) {
    const Move& have = m.steps[static_cast<size_t>(site.step + j)];
    if (!(have == translate_move(t.left[static_cast<size_t>(j)].step, site.origin)))
      fail(Errc::NoMatch, "step " + std::to_string(site.step + j) + " differs from the fragment");
    if (!support_in_window(orig[static_cast<size_t>(site.step + j)], have, site.origin, w, h))
      fail(Errc::NoMatch,
           "step " + std::to_string(site.step + j) + " acts outside the window");
  }
  std::vector<Move> steps;
  steps.insert(steps.end(), m.steps.begin(), m.steps.begin() + site.step);
  for (int j = 0; j + 1 < kr; ++j)
    steps.push_back(translate_move(t.right[static_cast<size_t>(j)].step, site.origin));
  steps.insert(steps.end(), m.steps.begin() + site.step + kl - 1, m.steps.end());
  GridMovie out{m.initial, std::move(steps)};
  std::vector<GridDiagram> res;
  try {
    res = stills(out);
  } catch (const GridError& e) {
    fail(Errc::ResultInvalid, std::string("spliced film strip does not play: ") + e.what());
  }
  for (int j = 0; j < kr; ++j) {
    SubDiagram got;
    try {
      got = window(res[static_cast<size_t>(site.step + j)], site.origin, w, h);
    } catch (const GridError&) {
      fail(Errc::ResultInvalid, "replacement window leaves the grid at frame " + std::to_string(j));
    }
    if (!same_pattern(got, t.right[static_cast<size_t>(j)].sub))
      fail(Errc::ResultInvalid, "replacement picture differs at frame " + std::to_string(j));
  }
  for (int j = 0; j + 1 < kr; ++j)
    if (!support_in_window(res[static_cast<size_t>(site.step + j)],
                           out.steps[static_cast<size_t>(site.step + j)], site.origin, w, h))
      fail(Errc::ResultInvalid,
           "replacement step " + std::to_string(site.step + j) + " acts outside the window");
  if (!(res[static_cast<size_t>(site.step + kr - 1)] ==
        orig[static_cast<size_t>(site.step + kl - 1)]))
    fail(Errc::ResultInvalid, "replacement changes the picture outside the window");
  return out;
}

}  // namespace gridknot
