#include "gridknot/movie.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <string>
#include <utility>

#include "gridknot/errors.hpp"

namespace gridknot {

namespace {

[[noreturn]] void bad_step(std::size_t index, const std::string& cause) {
  fail(Errc::StepInvalid, "step " + std::to_string(index) + ": " + cause);
}

// Strips the "errc_name: " prefix GridError::what() carries so a wrapped
// message names the inner code once, not twice.
std::string cause_of(const GridError& e) {
  return std::string(errc_name(e.code())) + " (" + std::string(e.what()).substr(
             std::string(errc_name(e.code())).size() + 2) + ")";
}

}  // namespace

std::vector<GridDiagram> stills(const GridMovie& m) {
  std::vector<GridDiagram> out;
  out.reserve(m.steps.size() + 1);
  out.push_back(m.initial);
  for (std::size_t i = 0; i < m.steps.size(); ++i) {
    try {
      out.push_back(apply_move(out.back(), m.steps[i]));
    } catch (const GridError& e) {
      bad_step(i, cause_of(e));
    }
  }
  return out;
}

std::vector<MoveClass> validate_movie(const GridMovie& m, const MovieOptions& opts) {
  std::vector<MoveClass> classes;
  classes.reserve(m.steps.size());
  GridDiagram d = m.initial;
  for (std::size_t i = 0; i < m.steps.size(); ++i) {
    Classification cls;
    try {
      cls = classify(d, m.steps[i]);
      if (cls.cls == MoveClass::CommObstructed)
        bad_step(i, "obstructed commutation");
      if (cls.cls == MoveClass::CommComposite && !opts.allow_composite)
        bad_step(i, "composite commutation");
      d = apply_move(d, m.steps[i]);
    } catch (const GridError& e) {
      if (e.code() == Errc::StepInvalid) throw;
      bad_step(i, cause_of(e));
    }
    classes.push_back(cls.cls);
  }
  return classes;
}

namespace {

// Component index of each marker of a still, including the O of a coincident
// pair (trace lists only its X).
struct ComponentIndex {
  std::vector<Component> components;

  int of(Cell cell, MarkerKind kind) const {
    for (std::size_t k = 0; k < components.size(); ++k)
      for (const Marker& mk : components[k].path)
        if (mk.cell == cell && (mk.kind == kind || components[k].degenerate))
          return static_cast<int>(k);
    return -1;
  }
};

struct UnionFind {
  std::vector<int> parent;

  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

MovieStats movie_stats(const GridMovie& m) {
  const std::vector<GridDiagram> film = stills(m);
  MovieStats st;

  std::vector<ComponentIndex> comps;
  comps.reserve(film.size());
  st.component_timeline.reserve(film.size());
  std::vector<int> offset(film.size() + 1, 0);
  for (std::size_t i = 0; i < film.size(); ++i) {
    comps.push_back({trace(film[i])});
    st.component_timeline.push_back(static_cast<int>(comps[i].components.size()));
    offset[i + 1] = offset[i] + st.component_timeline[i];
  }

  // Two components belong to one surface piece when a marker of the earlier
  // still maps into the later one; saddles merge and split pieces the same
  // way, through the shared image component.
  UnionFind uf(offset.back());
  for (std::size_t i = 0; i + 1 < film.size(); ++i) {
    for (const auto& [mk, images] : marker_map(film[i], m.steps[i])) {
      int from = comps[i].of(mk.cell, mk.kind);
      for (Cell img : images) {
        int to = comps[i + 1].of(img, mk.kind);
        uf.unite(offset[i] + from, offset[i + 1] + to);
      }
    }
    if (std::holds_alternative<BirthMove>(m.steps[i])) ++st.births;
    if (std::holds_alternative<DeathMove>(m.steps[i])) ++st.deaths;
    if (std::holds_alternative<SaddleMove>(m.steps[i])) ++st.saddles;
  }

  st.euler_characteristic = st.births + st.deaths - st.saddles;
  int pieces = 0;
  for (int v = 0; v < offset.back(); ++v)
    if (uf.find(v) == v) ++pieces;
  st.surface_pieces = pieces;
  st.boundary_circles = st.component_timeline.front() + st.component_timeline.back();

  bool closed = film.front().index() == 0 && film.back().index() == 0;
  if (closed && st.surface_pieces == 1 && (2 - st.euler_characteristic) % 2 == 0)
    st.genus = (2 - st.euler_characteristic) / 2;
  return st;
}

bool is_movie_isotopy(const GridMovie& a, const GridMovie& b,
                      const std::vector<std::vector<Move>>& level_isotopies) {
  const std::vector<GridDiagram> sa = stills(a);
  const std::vector<GridDiagram> sb = stills(b);
  if (sa.size() != sb.size())
    fail(Errc::LevelCountMismatch, "movies have " + std::to_string(sa.size()) + " and " +
                                       std::to_string(sb.size()) + " stills");
  if (!level_isotopies.empty() && level_isotopies.size() != sa.size())
    fail(Errc::LevelCountMismatch, std::to_string(level_isotopies.size()) +
                                       " witness sequences for " + std::to_string(sa.size()) +
                                       " stills");

  for (std::size_t i = 0; i < sa.size(); ++i) {
    GridDiagram d = sa[i];
    if (i < level_isotopies.size()) {
      for (std::size_t j = 0; j < level_isotopies[i].size(); ++j) {
        const Move& mv = level_isotopies[i][j];
        const std::string where = "level " + std::to_string(i) + " step " + std::to_string(j);
        try {
          if (!is_planar_isotopy_step(classify(d, mv).cls))
            fail(Errc::NonPlanarWitness,
                 where + " classifies " + move_class_name(classify(d, mv).cls));
          d = apply_move(d, mv);
        } catch (const GridError& e) {
          if (e.code() == Errc::NonPlanarWitness) throw;
          fail(Errc::NonPlanarWitness, where + ": " + cause_of(e));
        }
      }
    }
    if (!(d == sb[i])) return false;
  }
  return true;
}

GridMovie pad_still(const GridMovie& m, int index) {
  if (index < 0 || index > static_cast<int>(m.steps.size()))
    fail(Errc::IndexOutOfRange, "still " + std::to_string(index) + " of a movie with " +
                                    std::to_string(m.steps.size() + 1) + " stills");
  GridMovie out = m;
  out.steps.insert(out.steps.begin() + index, Move{IdentityMove{}});
  return out;
}

namespace {

// Line correspondence across one step. `post` maps a source-frame line to its
// result-frame line, -1 when the line splits or disappears; `pre` maps a
// result-frame line back to the source lines it came from: none when the step
// created it, two when the step merged a pair into it or split it off a pair.
struct LineMap {
  std::function<int(int)> post;
  std::function<std::vector<int>(int)> pre;
};

LineMap lm_identity() {
  return {[](int v) { return v; }, [](int v) { return std::vector<int>{v}; }};
}

LineMap lm_swap(int a, int b) {
  auto sw = [a, b](int v) { return v == a ? b : v == b ? a : v; };
  return {sw, [sw](int v) { return std::vector<int>{sw(v)}; }};
}

// Stabilization: line c splits into c and c+1.
LineMap lm_split(int c) {
  return {[c](int v) { return v == c ? -1 : v + (v > c ? 1 : 0); },
          [c](int v) -> std::vector<int> {
            if (v == c || v == c + 1) return {c};
            return {v - (v > c + 1 ? 1 : 0)};
          }};
}

// Birth: a fresh line appears at g.
LineMap lm_insert(int g) {
  return {[g](int v) { return v + (v >= g ? 1 : 0); },
          [g](int v) -> std::vector<int> {
            if (v == g) return {};
            return {v - (v > g ? 1 : 0)};
          }};
}

// Destabilization: lines r and r+1 merge into r.
LineMap lm_merge(int r) {
  return {[r](int v) { return v - (v > r ? 1 : 0); },
          [r](int v) -> std::vector<int> {
            if (v == r) return {r, r + 1};
            return {v + (v > r ? 1 : 0)};
          }};
}

// Destabilization or death: line c disappears with its markers.
LineMap lm_remove(int c) {
  return {[c](int v) { return v == c ? -1 : v - (v > c ? 1 : 0); },
          [c](int v) { return std::vector<int>{v + (v >= c ? 1 : 0)}; }};
}

struct FrameMap {
  LineMap cols = lm_identity();
  LineMap rows = lm_identity();
};

LineMap commute_swap(const GridDiagram& d, const CommuteMove& cm) {
  if (cm.wrap) return lm_swap(0, d.index() - 1);
  return lm_swap(cm.index, cm.index + 1);
}

FrameMap frame_map(const GridDiagram& d, const Move& m) {
  FrameMap fm;
  if (const auto* s = std::get_if<StabMove>(&m)) {
    fm.cols = lm_split(s->at.col);
    fm.rows = lm_split(s->at.row);
  } else if (const auto* s = std::get_if<DestabMove>(&m)) {
    if (s->axis == Axis::Cols) {
      fm.cols = lm_remove(s->at.col);
      fm.rows = lm_merge(s->at.row);
    } else {
      fm.cols = lm_merge(s->at.col);
      fm.rows = lm_remove(s->at.row);
    }
  } else if (const auto* s = std::get_if<CommuteMove>(&m)) {
    (s->axis == Axis::Cols ? fm.cols : fm.rows) = commute_swap(d, *s);
  } else if (const auto* s = std::get_if<TransferMove>(&m)) {
    for (const CommuteMove& cm : {s->first, s->second})
      (cm.axis == Axis::Cols ? fm.cols : fm.rows) = commute_swap(d, cm);
  } else if (const auto* s = std::get_if<BirthMove>(&m)) {
    fm.cols = lm_insert(s->cell.col);
    fm.rows = lm_insert(s->cell.row);
  } else if (const auto* s = std::get_if<DeathMove>(&m)) {
    fm.cols = lm_remove(s->column);
    fm.rows = lm_remove(d.x_row(s->column));
  }
  return fm;
}

std::optional<int> try_map_line(const LineMap& lm, int v, bool backward) {
  if (backward) {
    std::vector<int> src = lm.pre(v);
    if (src.size() == 1) return src[0];
    return std::nullopt;
  }
  int img = lm.post(v);
  if (img >= 0) return img;
  return std::nullopt;
}

int map_line(const LineMap& lm, int v, bool backward) {
  if (std::optional<int> x = try_map_line(lm, v, backward)) return *x;
  fail(Errc::AmbiguousRetarget,
       "line " + std::to_string(v) + " has no counterpart in the re-targeted frame");
}

// Re-expresses an insertion point (a position between lines, 0..n). Each
// neighbouring line anchors it; an anchor whose line the step created, split
// or removed drops out, and surviving anchors must agree.
int map_seam(const LineMap& lm, int g, bool backward, int n_from) {
  std::optional<int> left, right;
  if (g < n_from)
    if (std::optional<int> x = try_map_line(lm, g, backward)) left = *x;
  if (g > 0)
    if (std::optional<int> x = try_map_line(lm, g - 1, backward)) right = *x + 1;
  if (left && right && *left != *right)
    fail(Errc::AmbiguousRetarget, "insertion point " + std::to_string(g) +
                                      " cannot be re-expressed in the re-targeted frame");
  if (left) return *left;
  if (right) return *right;
  if (n_from == 0) return 0;
  fail(Errc::AmbiguousRetarget, "insertion point " + std::to_string(g) +
                                    " has no anchor in the re-targeted frame");
}

CommuteMove retarget_commute(const CommuteMove& cm, const FrameMap& fm, bool backward, int n_from,
                             int n_to) {
  const LineMap& lm = cm.axis == Axis::Cols ? fm.cols : fm.rows;
  int lo = cm.wrap ? 0 : cm.index;
  int hi = cm.wrap ? n_from - 1 : cm.index + 1;
  int lo2 = map_line(lm, lo, backward);
  int hi2 = map_line(lm, hi, backward);
  if (cm.wrap) {
    if (lo2 != 0 || hi2 != n_to - 1)
      fail(Errc::AmbiguousRetarget, "interchange across the domain edge no longer sits on it");
    return {cm.axis, n_to - 1, true};
  }
  if (hi2 != lo2 + 1)
    fail(Errc::AmbiguousRetarget, "interchanged lines are no longer adjacent");
  return {cm.axis, lo2, false};
}

// Rewrites every coordinate of `mv` through `fm`. backward pulls a step of
// the later frame into the earlier one, forward pushes the other way.
Move retarget(const Move& mv, const FrameMap& fm, bool backward, int n_from, int n_to) {
  if (const auto* s = std::get_if<StabMove>(&mv)) {
    StabMove out = *s;
    out.at = {map_line(fm.cols, s->at.col, backward), map_line(fm.rows, s->at.row, backward)};
    return out;
  }
  if (const auto* s = std::get_if<DestabMove>(&mv)) {
    DestabMove out = *s;
    out.at = {map_line(fm.cols, s->at.col, backward), map_line(fm.rows, s->at.row, backward)};
    const LineMap& along = s->axis == Axis::Cols ? fm.rows : fm.cols;
    int second = s->axis == Axis::Cols ? s->at.row + 1 : s->at.col + 1;
    int second2 = s->axis == Axis::Cols ? out.at.row + 1 : out.at.col + 1;
    if (map_line(along, second, backward) != second2)
      fail(Errc::AmbiguousRetarget, "destabilization pair is no longer adjacent");
    return out;
  }
  if (const auto* s = std::get_if<CommuteMove>(&mv))
    return retarget_commute(*s, fm, backward, n_from, n_to);
  if (const auto* s = std::get_if<TransferMove>(&mv)) {
    TransferMove out = *s;
    out.crossing = {map_line(fm.cols, s->crossing.col, backward),
                    map_line(fm.rows, s->crossing.row, backward)};
    out.first = retarget_commute(s->first, fm, backward, n_from, n_to);
    out.second = retarget_commute(s->second, fm, backward, n_from, n_to);
    return out;
  }
  if (const auto* s = std::get_if<BirthMove>(&mv)) {
    BirthMove out = *s;
    out.cell = {map_seam(fm.cols, s->cell.col, backward, n_from),
                map_seam(fm.rows, s->cell.row, backward, n_from)};
    return out;
  }
  if (const auto* s = std::get_if<DeathMove>(&mv))
    return DeathMove{map_line(fm.cols, s->column, backward)};
  if (const auto* s = std::get_if<SaddleMove>(&mv)) {
    SaddleMove out = *s;
    out.at = {map_line(fm.cols, s->at.col, backward), map_line(fm.rows, s->at.row, backward)};
    if (map_line(fm.cols, s->at.col + 1, backward) != out.at.col + 1 ||
        map_line(fm.rows, s->at.row + 1, backward) != out.at.row + 1)
      fail(Errc::AmbiguousRetarget, "saddle block is no longer a 2x2 block");
    return out;
  }
  return mv;  // identity
}

}  // namespace

GridMovie interchange_distant(const GridMovie& m, int i) {
  if (i < 0 || i + 1 >= static_cast<int>(m.steps.size()))
    fail(Errc::IndexOutOfRange, "no adjacent step pair at " + std::to_string(i));
  const std::vector<GridDiagram> film = stills(m);
  const GridDiagram& d0 = film[i];
  const GridDiagram& d1 = film[i + 1];
  const GridDiagram& d2 = film[i + 2];
  const Move& a = m.steps[i];
  const Move& b = m.steps[i + 1];

  const FrameMap fa = frame_map(d0, a);
  const MoveSupport sa = move_support(d0, a);
  const MoveSupport sb_post = move_support(d1, b);

  // Pull b's support back to d0's frame before comparing. A line a created
  // pulls back to nothing here; b's own parameters catch that below.
  MoveSupport sb;
  for (int c : sb_post.cols)
    for (int x : fa.cols.pre(c)) sb.cols.insert(x);
  for (int r : sb_post.rows)
    for (int x : fa.rows.pre(r)) sb.rows.insert(x);
  if (!supports_disjoint(sa, sb))
    fail(Errc::OverlappingSupport,
         "steps " + std::to_string(i) + " and " + std::to_string(i + 1) + " share a line");

  const Move b2 = retarget(b, fa, /*backward=*/true, d1.index(), d0.index());
  GridDiagram e1 = d0;
  try {
    e1 = apply_move(d0, b2);
  } catch (const GridError& e) {
    fail(Errc::AmbiguousRetarget, "re-targeted step does not apply: " + cause_of(e));
  }
  const Move a2 = retarget(a, frame_map(d0, b2), /*backward=*/false, d0.index(), e1.index());
  GridDiagram e2 = e1;
  try {
    e2 = apply_move(e1, a2);
  } catch (const GridError& e) {
    fail(Errc::AmbiguousRetarget, "re-targeted step does not apply: " + cause_of(e));
  }
  if (!(e2 == d2))
    fail(Errc::AmbiguousRetarget, "swapped steps do not reproduce the final still");

  GridMovie out = m;
  out.steps[i] = b2;
  out.steps[i + 1] = a2;
  return out;
}

}  // namespace gridknot
