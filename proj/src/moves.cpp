#include "gridknot/moves.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include "gridknot/errors.hpp"

namespace gridknot {

namespace {

std::string cell_str(Cell c) {
  std::ostringstream out;
  out << "(" << c.col << "," << c.row << ")";
  return out.str();
}

void check_cell(const GridDiagram& d, Cell c, const char* what) {
  if (c.col < 0 || c.col >= d.index() || c.row < 0 || c.row >= d.index())
    fail(Errc::IndexOutOfRange,
         std::string(what) + " cell " + cell_str(c) + " outside grid of index " +
             std::to_string(d.index()));
}

GridDiagram build(std::vector<int> xs, std::vector<int> os) {
  int n = static_cast<int>(xs.size());
  return GridDiagram::make(n, std::move(xs), std::move(os));
}

// ---- stabilization -------------------------------------------------------

void check_stab(const GridDiagram& d, const StabMove& m) {
  check_cell(d, m.at, "stabilization");
  int have = m.marker == MarkerKind::X ? d.x_row(m.at.col) : d.o_row(m.at.col);
  if (have != m.at.row)
    fail(Errc::MalformedStabilization,
         std::string("no ") + (m.marker == MarkerKind::X ? "X" : "O") + " marker at " +
             cell_str(m.at));
}

GridDiagram apply_stab(const GridDiagram& d, const StabMove& m) {
  check_stab(d, m);
  int n = d.index();
  int c = m.at.col, r = m.at.row;
  bool east = corner_east(m.corner), north = corner_north(m.corner);
  // Markers of the split row/column land on the side away from the corner.
  auto shift_col = [&](int cc) { return cc + ((cc > c || (cc == c && !east)) ? 1 : 0); };
  auto shift_row = [&](int rr) { return rr + ((rr > r || (rr == r && !north)) ? 1 : 0); };

  std::vector<int> xs2(static_cast<size_t>(n) + 1, -1), os2(static_cast<size_t>(n) + 1, -1);
  for (int cc = 0; cc < n; ++cc) {
    if (!(m.marker == MarkerKind::X && cc == c && d.x_row(cc) == r))
      xs2[static_cast<size_t>(shift_col(cc))] = shift_row(d.x_row(cc));
    if (!(m.marker == MarkerKind::O && cc == c && d.o_row(cc) == r))
      os2[static_cast<size_t>(shift_col(cc))] = shift_row(d.o_row(cc));
  }
  int kcol = c + (east ? 1 : 0), krow = r + (north ? 1 : 0);
  Cell beside{c + (east ? 0 : 1), krow};  // shares the corner's row
  Cell along{kcol, r + (north ? 0 : 1)};  // shares the corner's column
  if (m.marker == MarkerKind::X) {
    os2[static_cast<size_t>(kcol)] = krow;
    xs2[static_cast<size_t>(beside.col)] = beside.row;
    xs2[static_cast<size_t>(along.col)] = along.row;
  } else {
    xs2[static_cast<size_t>(kcol)] = krow;
    os2[static_cast<size_t>(beside.col)] = beside.row;
    os2[static_cast<size_t>(along.col)] = along.row;
  }
  return build(std::move(xs2), std::move(os2));
}

// ---- destabilization -----------------------------------------------------

// Anchor candidates in canonical order: smaller neighbouring line first, then
// the pair member nearer the origin. A candidate anchors the pair when it
// holds a marker whose kind differs from the pair member it lines up with.
std::vector<Cell> destab_anchor_candidates(const DestabMove& m) {
  int c = m.at.col, r = m.at.row;
  if (m.axis == Axis::Cols)
    return {{c - 1, r}, {c - 1, r + 1}, {c + 1, r}, {c + 1, r + 1}};
  return {{c, r - 1}, {c + 1, r - 1}, {c, r + 1}, {c + 1, r + 1}};
}

bool anchor_ok(const GridDiagram& d, const DestabMove& m, Cell a) {
  if (a.col < 0 || a.col >= d.index() || a.row < 0 || a.row >= d.index()) return false;
  if (m.axis == Axis::Cols) {
    // The pair member sharing the candidate's row sits in column m.at.col.
    bool member_is_x = d.x_row(m.at.col) == a.row;
    return member_is_x ? d.o_row(a.col) == a.row : d.x_row(a.col) == a.row;
  }
  // The pair member sharing the candidate's column sits in row m.at.row.
  bool member_is_x = d.x_row(a.col) == m.at.row;
  return member_is_x ? d.o_row(a.col) == a.row : d.x_row(a.col) == a.row;
}

std::optional<Cell> find_anchor(const GridDiagram& d, const DestabMove& m) {
  for (Cell a : destab_anchor_candidates(m))
    if (anchor_ok(d, m, a)) return a;
  return std::nullopt;
}

void check_destab(const GridDiagram& d, const DestabMove& m) {
  int n = d.index();
  int c = m.at.col, r = m.at.row;
  if (m.axis == Axis::Cols) {
    if (c < 0 || c >= n || r < 0 || r + 1 >= n)
      fail(Errc::IndexOutOfRange, "destabilization pair " + cell_str(m.at) + " outside grid");
    if (std::minmax(d.x_row(c), d.o_row(c)) != std::minmax(r, r + 1))
      fail(Errc::NoDestabPattern,
           "column " + std::to_string(c) + " markers are not the adjacent pair at rows " +
               std::to_string(r) + "," + std::to_string(r + 1));
  } else {
    if (r < 0 || r >= n || c < 0 || c + 1 >= n)
      fail(Errc::IndexOutOfRange, "destabilization pair " + cell_str(m.at) + " outside grid");
    if (std::minmax(d.x_col(r), d.o_col(r)) != std::minmax(c, c + 1))
      fail(Errc::NoDestabPattern,
           "row " + std::to_string(r) + " markers are not the adjacent pair at columns " +
               std::to_string(c) + "," + std::to_string(c + 1));
  }
  if (!find_anchor(d, m))
    fail(Errc::NoDestabPattern,
         "pair at " + cell_str(m.at) + " has no neighbouring third marker completing a corner");
}

GridDiagram apply_destab(const GridDiagram& d, const DestabMove& m) {
  check_destab(d, m);
  int n = d.index();
  int c = m.at.col, r = m.at.row;
  std::vector<int> xs2(static_cast<size_t>(n) - 1, -1), os2(static_cast<size_t>(n) - 1, -1);
  auto nc = [&](int cc) { return cc - (cc > c ? 1 : 0); };
  auto nr = [&](int rr) { return rr - (rr > r ? 1 : 0); };
  if (m.axis == Axis::Cols) {
    // Drop column c, merge rows r and r+1.
    for (int cc = 0; cc < n; ++cc) {
      if (cc == c) continue;
      xs2[static_cast<size_t>(nc(cc))] = nr(d.x_row(cc));
      os2[static_cast<size_t>(nc(cc))] = nr(d.o_row(cc));
    }
  } else {
    // Drop row r, merge columns c and c+1.
    for (int cc = 0; cc < n; ++cc) {
      if (d.x_row(cc) != r) xs2[static_cast<size_t>(nc(cc))] = nr(d.x_row(cc));
      if (d.o_row(cc) != r) os2[static_cast<size_t>(nc(cc))] = nr(d.o_row(cc));
    }
  }
  return build(std::move(xs2), std::move(os2));
}

// ---- commutation ---------------------------------------------------------

void check_commute_index(const GridDiagram& d, const CommuteMove& m) {
  int n = d.index();
  if (n < 2) fail(Errc::IndexOutOfRange, "grid too small to commute");
  if (m.wrap) {
    if (m.index != n - 1)
      fail(Errc::IndexOutOfRange, "wrapping commutation must use index " + std::to_string(n - 1));
  } else if (m.index < 0 || m.index + 1 >= n) {
    fail(Errc::IndexOutOfRange, "commutation index " + std::to_string(m.index) + " outside grid");
  }
}

std::pair<int, int> line_pair(const GridDiagram& d, const CommuteMove& m) {
  if (m.wrap) return {0, d.index() - 1};
  return {m.index, m.index + 1};
}

std::pair<int, int> line_span(const GridDiagram& d, Axis axis, int line) {
  if (axis == Axis::Cols) return std::minmax(d.x_row(line), d.o_row(line));
  return std::minmax(d.x_col(line), d.o_col(line));
}

GridDiagram apply_commute_unchecked(const GridDiagram& d, const CommuteMove& m) {
  auto [a, b] = line_pair(d, m);
  std::vector<int> xs2 = d.xs(), os2 = d.os();
  if (m.axis == Axis::Cols) {
    std::swap(xs2[static_cast<size_t>(a)], xs2[static_cast<size_t>(b)]);
    std::swap(os2[static_cast<size_t>(a)], os2[static_cast<size_t>(b)]);
  } else {
    for (int c = 0; c < d.index(); ++c) {
      auto flip = [&](int v) { return v == a ? b : v == b ? a : v; };
      xs2[static_cast<size_t>(c)] = flip(xs2[static_cast<size_t>(c)]);
      os2[static_cast<size_t>(c)] = flip(os2[static_cast<size_t>(c)]);
    }
  }
  return build(std::move(xs2), std::move(os2));
}

// Strands at coordinates strictly inside the inner span running strictly
// across both commuting lines.
int count_separating(const GridDiagram& d, const CommuteMove& m, int inner_lo, int inner_hi) {
  auto [a, b] = line_pair(d, m);
  int lo = std::min(a, b), hi = std::max(a, b);
  int k = 0;
  for (int t = inner_lo + 1; t < inner_hi; ++t) {
    auto [mn, mx] = line_span(d, m.axis == Axis::Cols ? Axis::Rows : Axis::Cols, t);
    if (mn < lo && hi < mx) ++k;
  }
  return k;
}

Classification classify_commute(const GridDiagram& d, const CommuteMove& m) {
  check_commute_index(d, m);
  auto [a, b] = line_pair(d, m);
  auto [lo1, hi1] = line_span(d, m.axis, a);
  auto [lo2, hi2] = line_span(d, m.axis, b);

  bool shared = lo1 == lo2 || lo1 == hi2 || hi1 == lo2 || hi1 == hi2;
  bool disjoint = !shared && (hi1 < lo2 || hi2 < lo1);
  bool nested = !shared && ((lo1 < lo2 && hi2 < hi1) || (lo2 < lo1 && hi1 < hi2));

  if (shared || (!disjoint && !nested)) return {MoveClass::CommObstructed, 0, 0};
  if (m.wrap) {
    GridDiagram after = apply_commute_unchecked(d, m);
    int delta = static_cast<int>(crossings(after).size()) - static_cast<int>(crossings(d).size());
    return {MoveClass::CommBoundaryArc, delta, 0};
  }
  if (disjoint) return {MoveClass::CommUnnested, 0, 0};

  int inner_lo = lo1 < lo2 ? lo2 : lo1;
  int inner_hi = lo1 < lo2 ? hi2 : hi1;
  GridDiagram after = apply_commute_unchecked(d, m);
  int delta = static_cast<int>(crossings(after).size()) - static_cast<int>(crossings(d).size());
  int k = count_separating(d, m, inner_lo, inner_hi);
  MoveClass cls;
  if (delta == 0)
    cls = k == 0 ? MoveClass::CommNestedP : MoveClass::CommNestedR3;
  else
    cls = k == 0 ? MoveClass::CommNestedR2 : MoveClass::CommComposite;
  return {cls, delta, k};
}

GridDiagram apply_commute(const GridDiagram& d, const CommuteMove& m) {
  Classification c = classify_commute(d, m);
  if (c.cls == MoveClass::CommObstructed) {
    auto [a, b] = line_pair(d, m);
    fail(Errc::ObstructedCommutation,
         std::string(m.axis == Axis::Cols ? "columns " : "rows ") + std::to_string(a) + " and " +
             std::to_string(b) + " have touching or interleaved spans");
  }
  return apply_commute_unchecked(d, m);
}

// ---- transfer ------------------------------------------------------------

bool x_above(const GridDiagram& d, Cell q) { return d.x_row(q.col) > q.row; }

std::vector<Cell> crossing_cells(const GridDiagram& d) {
  std::vector<Cell> out;
  for (const Crossing& c : crossings(d)) out.push_back({c.col, c.row});
  return out;
}

struct TransferResult {
  GridDiagram mid;
  GridDiagram out;
  Cell moved;
};

// Crossing sign at q, or 0 when q is not a crossing.
int sign_at(const GridDiagram& d, Cell q) {
  for (const Crossing& c : crossings(d))
    if (c.col == q.col && c.row == q.row) return c.sign;
  return 0;
}

// Where the crossing cell q lands when the interchange swaps its line pair.
// Crossings on untouched lines keep their cells; the swapped pair trades
// indices.
Cell track_cell(const CommuteMove& m, std::pair<int, int> pr, Cell q) {
  if (m.axis == Axis::Cols) {
    if (q.col == pr.first) return {pr.second, q.row};
    if (q.col == pr.second) return {pr.first, q.row};
  } else {
    if (q.row == pr.first) return {q.col, pr.second};
    if (q.row == pr.second) return {q.col, pr.first};
  }
  return q;
}

TransferResult run_transfer(const GridDiagram& d, const TransferMove& m) {
  check_cell(d, m.crossing, "transfer");
  int psign = sign_at(d, m.crossing);
  if (psign == 0) fail(Errc::TransferNotR2Pair, "no crossing at " + cell_str(m.crossing));
  if (m.first.wrap || m.second.wrap)
    fail(Errc::TransferNotR2Pair, "transfer commutations cannot cross the domain edge");
  if (m.first.axis == m.second.axis)
    fail(Errc::TransferNotR2Pair, "transfer needs one row and one column interchange");

  Classification c1 = classify_commute(d, m.first);
  if (c1.cls != MoveClass::CommNestedR2 || c1.delta_crossings != 2)
    fail(Errc::TransferNotR2Pair, "first commutation must create a crossing pair");
  GridDiagram mid = apply_commute_unchecked(d, m.first);
  auto pr1 = line_pair(d, m.first);
  std::vector<Cell> old_in_mid;
  for (Cell q : crossing_cells(d)) old_in_mid.push_back(track_cell(m.first, pr1, q));
  std::vector<Cell> fresh;
  for (Cell q : crossing_cells(mid))
    if (std::find(old_in_mid.begin(), old_in_mid.end(), q) == old_in_mid.end())
      fresh.push_back(q);
  if (fresh.size() != 2 || sign_at(mid, fresh[0]) + sign_at(mid, fresh[1]) != 0)
    fail(Errc::TransferNotR2Pair, "created crossings must be a pair of opposite signs");
  Cell p_mid = track_cell(m.first, pr1, m.crossing);

  Classification c2 = classify_commute(mid, m.second);
  if (c2.cls != MoveClass::CommNestedR2 || c2.delta_crossings != -2)
    fail(Errc::TransferNotR2Pair, "second commutation must remove a crossing pair");
  GridDiagram fin = apply_commute_unchecked(mid, m.second);
  auto pr2 = line_pair(mid, m.second);
  std::vector<Cell> fin_cells = crossing_cells(fin);
  std::vector<Cell> dying;
  for (Cell q : crossing_cells(mid)) {
    Cell img = track_cell(m.second, pr2, q);
    if (std::find(fin_cells.begin(), fin_cells.end(), img) == fin_cells.end()) dying.push_back(q);
  }
  if (dying.size() != 2 || (dying[0] != p_mid && dying[1] != p_mid))
    fail(Errc::TransferNotR2Pair, "second commutation must remove the named crossing");
  Cell other = dying[0] == p_mid ? dying[1] : dying[0];
  if ((other != fresh[0] && other != fresh[1]) || sign_at(mid, other) != -psign)
    fail(Errc::TransferNotR2Pair,
         "second commutation must remove the created crossing of sign opposite the original");
  Cell keep = other == fresh[0] ? fresh[1] : fresh[0];
  Cell q = track_cell(m.second, pr2, keep);
  if (sign_at(fin, q) != psign)
    fail(Errc::TransferNotR2Pair, "moved crossing must keep the sign of the original");
  if (x_above(fin, q) == x_above(d, m.crossing))
    fail(Errc::TransferNotR2Pair, "moved crossing keeps its bend, expected the opposite one");
  return {std::move(mid), std::move(fin), q};
}

// ---- birth, death, saddle ------------------------------------------------

GridDiagram apply_birth(const GridDiagram& d, const BirthMove& m) {
  int n = d.index();
  if (m.cell.col < 0 || m.cell.col > n || m.cell.row < 0 || m.cell.row > n)
    fail(Errc::IndexOutOfRange,
         "birth cell " + cell_str(m.cell) + " outside the allowed positions 0.." +
             std::to_string(n));
  std::vector<int> xs2(static_cast<size_t>(n) + 1, -1), os2(static_cast<size_t>(n) + 1, -1);
  for (int cc = 0; cc < n; ++cc) {
    int ncol = cc + (cc >= m.cell.col ? 1 : 0);
    xs2[static_cast<size_t>(ncol)] = d.x_row(cc) + (d.x_row(cc) >= m.cell.row ? 1 : 0);
    os2[static_cast<size_t>(ncol)] = d.o_row(cc) + (d.o_row(cc) >= m.cell.row ? 1 : 0);
  }
  xs2[static_cast<size_t>(m.cell.col)] = m.cell.row;
  os2[static_cast<size_t>(m.cell.col)] = m.cell.row;
  return build(std::move(xs2), std::move(os2));
}

GridDiagram apply_death(const GridDiagram& d, const DeathMove& m) {
  int n = d.index();
  if (m.column < 0 || m.column >= n)
    fail(Errc::IndexOutOfRange, "death column " + std::to_string(m.column) + " outside grid");
  if (!d.coincident(m.column))
    fail(Errc::NoCoincidentPair,
         "column " + std::to_string(m.column) + " does not hold a coincident X/O pair");
  int r = d.x_row(m.column);
  std::vector<int> xs2(static_cast<size_t>(n) - 1), os2(static_cast<size_t>(n) - 1);
  for (int cc = 0; cc < n; ++cc) {
    if (cc == m.column) continue;
    int ncol = cc - (cc > m.column ? 1 : 0);
    xs2[static_cast<size_t>(ncol)] = d.x_row(cc) - (d.x_row(cc) > r ? 1 : 0);
    os2[static_cast<size_t>(ncol)] = d.o_row(cc) - (d.o_row(cc) > r ? 1 : 0);
  }
  return build(std::move(xs2), std::move(os2));
}

GridDiagram apply_saddle(const GridDiagram& d, const SaddleMove& m) {
  int n = d.index();
  if (m.at.col < 0 || m.at.col + 1 >= n || m.at.row < 0 || m.at.row + 1 >= n)
    fail(Errc::IndexOutOfRange, "saddle block at " + cell_str(m.at) + " outside grid");
  std::vector<int> xs2 = d.xs(), os2 = d.os();
  std::vector<int>& arr = m.use_x ? xs2 : os2;
  int c = m.at.col, r = m.at.row;
  bool main_diag = arr[static_cast<size_t>(c)] == r && arr[static_cast<size_t>(c) + 1] == r + 1;
  bool anti_diag = arr[static_cast<size_t>(c)] == r + 1 && arr[static_cast<size_t>(c) + 1] == r;
  bool want_main = m.dir == SaddleDir::MainToAnti;
  if (!(want_main ? main_diag : anti_diag))
    fail(Errc::SaddleWrongConfiguration,
         std::string(m.use_x ? "X" : "O") + " markers are not on the " +
             (want_main ? "main" : "anti") + " diagonal of the block at " + cell_str(m.at));
  std::swap(arr[static_cast<size_t>(c)], arr[static_cast<size_t>(c) + 1]);
  GridDiagram after = build(std::move(xs2), std::move(os2));
  if (crossings(after) != crossings(d))
    fail(Errc::SaddleChangesCrossings,
         "exchange at " + cell_str(m.at) + " does not leave the double points unchanged");
  return after;
}

}  // namespace

const char* move_class_name(MoveClass c) {
  switch (c) {
    case MoveClass::KinkStab: return "KinkStab";
    case MoveClass::R1Stab: return "R1Stab";
    case MoveClass::KinkDestab: return "KinkDestab";
    case MoveClass::R1Destab: return "R1Destab";
    case MoveClass::CommObstructed: return "CommObstructed";
    case MoveClass::CommUnnested: return "CommUnnested";
    case MoveClass::CommNestedP: return "CommNestedP";
    case MoveClass::CommNestedR2: return "CommNestedR2";
    case MoveClass::CommNestedR3: return "CommNestedR3";
    case MoveClass::CommComposite: return "CommComposite";
    case MoveClass::CommBoundaryArc: return "CommBoundaryArc";
    case MoveClass::Transfer: return "Transfer";
    case MoveClass::Birth: return "Birth";
    case MoveClass::Death: return "Death";
    case MoveClass::Saddle: return "Saddle";
    case MoveClass::Identity: return "Identity";
  }
  return "?";
}

std::string move_kind_name(const Move& m) {
  switch (m.index()) {
    case 0: return "stabilization";
    case 1: return "destabilization";
    case 2: return "commutation";
    case 3: return "transfer";
    case 4: return "birth";
    case 5: return "death";
    case 6: return "saddle";
    default: return "identity";
  }
}

GridDiagram apply_move(const GridDiagram& d, const Move& m) {
  struct V {
    const GridDiagram& d;
    GridDiagram operator()(const StabMove& s) const { return apply_stab(d, s); }
    GridDiagram operator()(const DestabMove& s) const { return apply_destab(d, s); }
    GridDiagram operator()(const CommuteMove& s) const { return apply_commute(d, s); }
    GridDiagram operator()(const TransferMove& s) const { return run_transfer(d, s).out; }
    GridDiagram operator()(const BirthMove& s) const { return apply_birth(d, s); }
    GridDiagram operator()(const DeathMove& s) const { return apply_death(d, s); }
    GridDiagram operator()(const SaddleMove& s) const { return apply_saddle(d, s); }
    GridDiagram operator()(const IdentityMove&) const { return d; }
  };
  return std::visit(V{d}, m);
}

Classification classify(const GridDiagram& d, const Move& m) {
  struct V {
    const GridDiagram& d;
    Classification operator()(const StabMove& s) const {
      GridDiagram after = apply_stab(d, s);
      int delta =
          static_cast<int>(crossings(after).size()) - static_cast<int>(crossings(d).size());
      if (delta != 0 && delta != 1)
        fail(Errc::InvalidMove,
             "stabilization changed the double points by " + std::to_string(delta));
      return {delta == 0 ? MoveClass::KinkStab : MoveClass::R1Stab, delta, 0};
    }
    Classification operator()(const DestabMove& s) const {
      GridDiagram after = apply_destab(d, s);
      int delta =
          static_cast<int>(crossings(after).size()) - static_cast<int>(crossings(d).size());
      if (delta != 0 && delta != -1)
        fail(Errc::InvalidMove,
             "destabilization changed the double points by " + std::to_string(delta));
      return {delta == 0 ? MoveClass::KinkDestab : MoveClass::R1Destab, delta, 0};
    }
    Classification operator()(const CommuteMove& s) const { return classify_commute(d, s); }
    Classification operator()(const TransferMove& s) const {
      run_transfer(d, s);
      return {MoveClass::Transfer, 0, 0};
    }
    Classification operator()(const BirthMove& s) const {
      apply_birth(d, s);
      return {MoveClass::Birth, 0, 0};
    }
    Classification operator()(const DeathMove& s) const {
      apply_death(d, s);
      return {MoveClass::Death, 0, 0};
    }
    Classification operator()(const SaddleMove& s) const {
      apply_saddle(d, s);
      return {MoveClass::Saddle, 0, 0};
    }
    Classification operator()(const IdentityMove&) const {
      return {MoveClass::Identity, 0, 0};
    }
  };
  return std::visit(V{d}, m);
}

Move inverse(const GridDiagram& d, const Move& m) {
  struct V {
    const GridDiagram& d;
    Move operator()(const StabMove& s) const {
      check_stab(d, s);
      int kcol = s.at.col + (corner_east(s.corner) ? 1 : 0);
      return DestabMove{Axis::Cols, {kcol, s.at.row}};
    }
    Move operator()(const DestabMove& s) const {
      check_destab(d, s);
      Cell a = *find_anchor(d, s);
      MarkerKind kind = d.x_row(a.col) == a.row ? MarkerKind::X : MarkerKind::O;
      if (s.axis == Axis::Cols) {
        bool anchor_west = a.col < s.at.col;
        Corner k = anchor_west ? (a.row == s.at.row + 1 ? Corner::NE : Corner::SE)
                               : (a.row == s.at.row + 1 ? Corner::NW : Corner::SW);
        return StabMove{kind, {std::min(a.col, s.at.col), s.at.row}, k};
      }
      bool anchor_south = a.row < s.at.row;
      Corner k = anchor_south ? (a.col == s.at.col + 1 ? Corner::NE : Corner::NW)
                              : (a.col == s.at.col + 1 ? Corner::SE : Corner::SW);
      return StabMove{kind, {s.at.col, std::min(a.row, s.at.row)}, k};
    }
    Move operator()(const CommuteMove& s) const {
      check_commute_index(d, s);
      return s;
    }
    Move operator()(const TransferMove& s) const {
      TransferResult r = run_transfer(d, s);
      return TransferMove{r.moved, s.second, s.first};
    }
    Move operator()(const BirthMove& s) const {
      apply_birth(d, s);
      return DeathMove{s.cell.col};
    }
    Move operator()(const DeathMove& s) const {
      apply_death(d, s);
      return BirthMove{{s.column, d.x_row(s.column)}};
    }
    Move operator()(const SaddleMove& s) const {
      apply_saddle(d, s);
      SaddleDir flip =
          s.dir == SaddleDir::MainToAnti ? SaddleDir::AntiToMain : SaddleDir::MainToAnti;
      return SaddleMove{s.at, flip, s.use_x};
    }
    Move operator()(const IdentityMove& s) const { return s; }
  };
  return std::visit(V{d}, m);
}

bool is_planar_isotopy_step(MoveClass cls) {
  switch (cls) {
    case MoveClass::KinkStab:
    case MoveClass::KinkDestab:
    case MoveClass::CommUnnested:
    case MoveClass::CommNestedP:
    case MoveClass::Transfer:
      return true;
    default:
      return false;
  }
}

std::vector<Move> enumerate_moves(const GridDiagram& d,
                                  const std::function<bool(const Classification&)>& filter) {
  int n = d.index();
  std::vector<Move> out;
  auto keep = [&](Move m) {
    try {
      Classification c = classify(d, m);
      if (c.cls == MoveClass::CommObstructed) return;
      if (!filter || filter(c)) out.push_back(std::move(m));
    } catch (const GridError&) {
    }
  };

  for (MarkerKind kind : {MarkerKind::X, MarkerKind::O})
    for (int c = 0; c < n; ++c) {
      Cell at{c, kind == MarkerKind::X ? d.x_row(c) : d.o_row(c)};
      for (Corner k : {Corner::SW, Corner::SE, Corner::NW, Corner::NE})
        keep(StabMove{kind, at, k});
    }

  for (int c = 0; c < n; ++c)
    if (std::abs(d.x_row(c) - d.o_row(c)) == 1)
      keep(DestabMove{Axis::Cols, {c, std::min(d.x_row(c), d.o_row(c))}});
  for (int r = 0; r < n; ++r)
    if (std::abs(d.x_col(r) - d.o_col(r)) == 1)
      keep(DestabMove{Axis::Rows, {std::min(d.x_col(r), d.o_col(r)), r}});

  for (Axis ax : {Axis::Cols, Axis::Rows}) {
    for (int i = 0; i + 1 < n; ++i) keep(CommuteMove{ax, i, false});
    if (n >= 2) keep(CommuteMove{ax, n - 1, true});
  }

  {
    std::vector<CommuteMove> firsts;
    for (Axis ax : {Axis::Cols, Axis::Rows})
      for (int i = 0; i + 1 < n; ++i) {
        CommuteMove f{ax, i, false};
        Classification c1 = classify_commute(d, f);
        if (c1.cls == MoveClass::CommNestedR2 && c1.delta_crossings == 2) firsts.push_back(f);
      }
    for (const CommuteMove& f : firsts) {
      Axis other = f.axis == Axis::Cols ? Axis::Rows : Axis::Cols;
      for (Cell p : crossing_cells(d))
        for (int j = 0; j + 1 < n; ++j) keep(TransferMove{p, f, {other, j, false}});
    }
  }

  for (int c = 0; c <= n; ++c)
    for (int r = 0; r <= n; ++r) keep(BirthMove{{c, r}});

  for (int c = 0; c < n; ++c)
    if (d.coincident(c)) keep(DeathMove{c});

  for (int c = 0; c + 1 < n; ++c)
    for (int r = 0; r + 1 < n; ++r)
      for (SaddleDir dir : {SaddleDir::MainToAnti, SaddleDir::AntiToMain})
        for (bool use_x : {false, true}) keep(SaddleMove{{c, r}, dir, use_x});

  keep(IdentityMove{});

  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::pair<Marker, std::vector<Cell>>> marker_map(const GridDiagram& d, const Move& m) {
  std::vector<std::pair<Marker, std::vector<Cell>>> out;
  auto emit = [&](auto image_of) {
    for (Marker mk : d.markers()) out.emplace_back(mk, image_of(mk));
  };

  if (const auto* s = std::get_if<StabMove>(&m)) {
    check_stab(d, *s);
    int c = s->at.col, r = s->at.row;
    bool east = corner_east(s->corner), north = corner_north(s->corner);
    auto sc = [&](int cc) { return cc + ((cc > c || (cc == c && !east)) ? 1 : 0); };
    auto sr = [&](int rr) { return rr + ((rr > r || (rr == r && !north)) ? 1 : 0); };
    int kcol = c + (east ? 1 : 0), krow = r + (north ? 1 : 0);
    Cell beside{c + (east ? 0 : 1), krow};
    Cell along{kcol, r + (north ? 0 : 1)};
    emit([&](Marker mk) -> std::vector<Cell> {
      if (mk.kind == s->marker && mk.cell == s->at) {
        std::vector<Cell> img{beside, along};
        std::sort(img.begin(), img.end());
        return img;
      }
      return {{sc(mk.cell.col), sr(mk.cell.row)}};
    });
  } else if (const auto* s = std::get_if<DestabMove>(&m)) {
    check_destab(d, *s);
    int c = s->at.col, r = s->at.row;
    bool cols = s->axis == Axis::Cols;
    emit([&](Marker mk) -> std::vector<Cell> {
      bool in_pair = cols ? (mk.cell.col == c && (mk.cell.row == r || mk.cell.row == r + 1))
                          : (mk.cell.row == r && (mk.cell.col == c || mk.cell.col == c + 1));
      if (in_pair) return {};
      return {{mk.cell.col - (mk.cell.col > c ? 1 : 0), mk.cell.row - (mk.cell.row > r ? 1 : 0)}};
    });
  } else if (const auto* s = std::get_if<CommuteMove>(&m)) {
    check_commute_index(d, *s);
    auto [a, b] = line_pair(d, *s);
    emit([&](Marker mk) -> std::vector<Cell> {
      Cell cc = mk.cell;
      int& coord = s->axis == Axis::Cols ? cc.col : cc.row;
      coord = coord == a ? b : coord == b ? a : coord;
      return {cc};
    });
  } else if (const auto* s = std::get_if<TransferMove>(&m)) {
    TransferResult r = run_transfer(d, *s);
    auto first_map = marker_map(d, Move{s->first});
    auto second_map = marker_map(r.mid, Move{s->second});
    for (const auto& [from, to] : first_map) {
      Marker via{to.at(0), from.kind};
      for (const auto& [mk2, to2] : second_map)
        if (mk2 == via) {
          out.emplace_back(from, to2);
          break;
        }
    }
  } else if (const auto* s = std::get_if<BirthMove>(&m)) {
    apply_birth(d, *s);
    emit([&](Marker mk) -> std::vector<Cell> {
      return {{mk.cell.col + (mk.cell.col >= s->cell.col ? 1 : 0),
               mk.cell.row + (mk.cell.row >= s->cell.row ? 1 : 0)}};
    });
  } else if (const auto* s = std::get_if<DeathMove>(&m)) {
    apply_death(d, *s);
    int r = d.x_row(s->column);
    emit([&](Marker mk) -> std::vector<Cell> {
      if (mk.cell.col == s->column) return {};
      return {{mk.cell.col - (mk.cell.col > s->column ? 1 : 0),
               mk.cell.row - (mk.cell.row > r ? 1 : 0)}};
    });
  } else if (const auto* s = std::get_if<SaddleMove>(&m)) {
    GridDiagram after = apply_saddle(d, *s);
    MarkerKind kind = s->use_x ? MarkerKind::X : MarkerKind::O;
    emit([&](Marker mk) -> std::vector<Cell> {
      if (mk.kind == kind && (mk.cell.col == s->at.col || mk.cell.col == s->at.col + 1) &&
          (mk.cell.row == s->at.row || mk.cell.row == s->at.row + 1)) {
        int nr = s->use_x ? after.x_row(mk.cell.col) : after.o_row(mk.cell.col);
        return {{mk.cell.col, nr}};
      }
      return {mk.cell};
    });
  } else {
    emit([](Marker mk) -> std::vector<Cell> { return {mk.cell}; });
  }
  return out;
}

namespace {

void add_line(std::set<int>& s, int v, int n) {
  if (v >= 0 && v < n) s.insert(v);
}

MoveSupport commute_support(const GridDiagram& d, const CommuteMove& m) {
  MoveSupport s;
  int n = d.index();
  auto [a, b] = line_pair(d, m);
  auto [lo1, hi1] = line_span(d, m.axis, a);
  auto [lo2, hi2] = line_span(d, m.axis, b);
  std::set<int>& own = m.axis == Axis::Cols ? s.cols : s.rows;
  std::set<int>& across = m.axis == Axis::Cols ? s.rows : s.cols;
  own.insert(a);
  own.insert(b);
  for (int v : {lo1, hi1, lo2, hi2}) add_line(across, v, n);
  bool nested = (lo1 < lo2 && hi2 < hi1) || (lo2 < lo1 && hi1 < hi2);
  if (nested && !m.wrap) {
    // The classification reads every strand inside the inner span.
    int ilo = std::max(lo1, lo2), ihi = std::min(hi1, hi2);
    for (int v = ilo; v <= ihi; ++v) across.insert(v);
  }
  for (int line : {a, b}) {
    if (m.axis == Axis::Cols) {
      s.cells.insert({line, d.x_row(line)});
      s.cells.insert({line, d.o_row(line)});
    } else {
      s.cells.insert({d.x_col(line), line});
      s.cells.insert({d.o_col(line), line});
    }
  }
  return s;
}

void merge_support(MoveSupport& into, const MoveSupport& other) {
  into.rows.insert(other.rows.begin(), other.rows.end());
  into.cols.insert(other.cols.begin(), other.cols.end());
  into.cells.insert(other.cells.begin(), other.cells.end());
}

}  // namespace

MoveSupport move_support(const GridDiagram& d, const Move& m) {
  struct V {
    const GridDiagram& d;
    MoveSupport operator()(const StabMove& s) const {
      check_stab(d, s);
      return {{s.at.row}, {s.at.col}, {s.at}};
    }
    MoveSupport operator()(const DestabMove& s) const {
      check_destab(d, s);
      MoveSupport sup;
      int n = d.index();
      if (s.axis == Axis::Cols) {
        sup.rows = {s.at.row, s.at.row + 1};
        for (int c : {s.at.col - 1, s.at.col, s.at.col + 1}) add_line(sup.cols, c, n);
        sup.cells.insert({s.at.col, s.at.row});
        sup.cells.insert({s.at.col, s.at.row + 1});
      } else {
        sup.cols = {s.at.col, s.at.col + 1};
        for (int r : {s.at.row - 1, s.at.row, s.at.row + 1}) add_line(sup.rows, r, n);
        sup.cells.insert({s.at.col, s.at.row});
        sup.cells.insert({s.at.col + 1, s.at.row});
      }
      for (Cell a : destab_anchor_candidates(s))
        if (anchor_ok(d, s, a)) sup.cells.insert(a);
      return sup;
    }
    MoveSupport operator()(const CommuteMove& s) const {
      check_commute_index(d, s);
      return commute_support(d, s);
    }
    MoveSupport operator()(const TransferMove& s) const {
      TransferResult r = run_transfer(d, s);
      MoveSupport sup = commute_support(d, s.first);
      sup.rows.insert(s.crossing.row);
      sup.cols.insert(s.crossing.col);
      sup.cells.insert(s.crossing);
      // The second interchange acts on the intermediate diagram; mapping its
      // lines back through the first interchange just swaps the two named
      // lines, leaving the support set unchanged as a set of indices.
      MoveSupport mid = commute_support(r.mid, s.second);
      auto swap_back = [&](int v, Axis ax) {
        if (ax != s.first.axis) return v;
        if (v == s.first.index) return s.first.index + 1;
        if (v == s.first.index + 1) return s.first.index;
        return v;
      };
      MoveSupport mapped;
      for (int v : mid.rows) mapped.rows.insert(swap_back(v, Axis::Rows));
      for (int v : mid.cols) mapped.cols.insert(swap_back(v, Axis::Cols));
      for (Cell c : mid.cells)
        mapped.cells.insert({swap_back(c.col, Axis::Cols), swap_back(c.row, Axis::Rows)});
      merge_support(sup, mapped);
      return sup;
    }
    MoveSupport operator()(const BirthMove& s) const {
      apply_birth(d, s);
      return {{s.cell.row}, {s.cell.col}, {}};
    }
    MoveSupport operator()(const DeathMove& s) const {
      apply_death(d, s);
      Cell at{s.column, d.x_row(s.column)};
      return {{at.row}, {at.col}, {at}};
    }
    MoveSupport operator()(const SaddleMove& s) const {
      apply_saddle(d, s);
      MoveSupport sup;
      sup.cols = {s.at.col, s.at.col + 1};
      sup.rows = {s.at.row, s.at.row + 1};
      for (Marker mk : d.markers())
        if (sup.cols.count(mk.cell.col) && sup.rows.count(mk.cell.row)) sup.cells.insert(mk.cell);
      return sup;
    }
    MoveSupport operator()(const IdentityMove&) const { return {}; }
  };
  return std::visit(V{d}, m);
}

bool supports_disjoint(const MoveSupport& a, const MoveSupport& b) {
  for (int r : a.rows)
    if (b.rows.count(r)) return false;
  for (int c : a.cols)
    if (b.cols.count(c)) return false;
  return true;
}

}  // namespace gridknot
