#include "gridknot/grid.hpp"

#include <algorithm>

namespace gridknot {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::NotPermutation: return "NotPermutation";
    case Errc::SizeMismatch: return "SizeMismatch";
    case Errc::ParseError: return "ParseError";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::ObstructedCommutation: return "ObstructedCommutation";
    case Errc::MalformedStabilization: return "MalformedStabilization";
    case Errc::NoDestabPattern: return "NoDestabPattern";
    case Errc::SaddleChangesCrossings: return "SaddleChangesCrossings";
    case Errc::SaddleWrongConfiguration: return "SaddleWrongConfiguration";
    case Errc::NoCoincidentPair: return "NoCoincidentPair";
    case Errc::TransferNotR2Pair: return "TransferNotR2Pair";
    case Errc::StepInvalid: return "StepInvalid";
    case Errc::LevelCountMismatch: return "LevelCountMismatch";
    case Errc::NonPlanarWitness: return "NonPlanarWitness";
    case Errc::OverlappingSupport: return "OverlappingSupport";
    case Errc::AmbiguousRetarget: return "AmbiguousRetarget";
    case Errc::SchemaError: return "SchemaError";
    case Errc::NoMatch: return "NoMatch";
    case Errc::ResultInvalid: return "ResultInvalid";
    case Errc::NonGenericInput: return "NonGenericInput";
    case Errc::BoxPlacementFailure: return "BoxPlacementFailure";
    case Errc::DegenerateHeights: return "DegenerateHeights";
    case Errc::NetTurnMismatch: return "NetTurnMismatch";
    case Errc::EndpointMismatch: return "EndpointMismatch";
    case Errc::ObstructedByOtherArcs: return "ObstructedByOtherArcs";
    case Errc::InvalidMove: return "InvalidMove";
  }
  return "UnknownError";
}

namespace {

void check_permutation(int n, const std::vector<int>& p, const char* which) {
  if (static_cast<int>(p.size()) != n)
    fail(Errc::SizeMismatch, std::string(which) + " has " + std::to_string(p.size()) +
                                 " entries for grid index " + std::to_string(n));
  std::vector<char> seen(static_cast<size_t>(n), 0);
  for (int v : p) {
    if (v < 0 || v >= n)
      fail(Errc::NotPermutation, std::string(which) + " entry " + std::to_string(v) + " out of range");
    if (seen[static_cast<size_t>(v)])
      fail(Errc::NotPermutation, std::string(which) + " repeats row " + std::to_string(v));
    seen[static_cast<size_t>(v)] = 1;
  }
}

}  // namespace

GridDiagram GridDiagram::make(int n, std::vector<int> xs, std::vector<int> os) {
  if (n < 0) fail(Errc::SizeMismatch, "negative grid index");
  check_permutation(n, xs, "xs");
  check_permutation(n, os, "os");
  return GridDiagram(n, std::move(xs), std::move(os));
}

GridDiagram::GridDiagram(int n, std::vector<int> xs, std::vector<int> os)
    : n_(n), xs_(std::move(xs)), os_(std::move(os)) {
  x_col_.assign(static_cast<size_t>(n), 0);
  o_col_.assign(static_cast<size_t>(n), 0);
  for (int c = 0; c < n; ++c) {
    x_col_[static_cast<size_t>(xs_[static_cast<size_t>(c)])] = c;
    o_col_[static_cast<size_t>(os_[static_cast<size_t>(c)])] = c;
  }
}

std::vector<Marker> GridDiagram::markers() const {
  std::vector<Marker> out;
  out.reserve(static_cast<size_t>(2 * n_));
  for (int c = 0; c < n_; ++c) {
    out.push_back({{c, x_row(c)}, MarkerKind::X});
    out.push_back({{c, o_row(c)}, MarkerKind::O});
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Component> trace(const GridDiagram& d) {
  const int n = d.index();
  std::vector<char> used(static_cast<size_t>(n), 0);  // per column-of-X
  std::vector<Component> components;

  for (int start = 0; start < n; ++start) {
    if (used[static_cast<size_t>(start)]) continue;
    Component comp;
    if (d.coincident(start)) {
      used[static_cast<size_t>(start)] = 1;
      comp.degenerate = true;
      comp.path.push_back({{start, d.x_row(start)}, MarkerKind::X});
      components.push_back(std::move(comp));
      continue;
    }
    int c = start;
    do {
      used[static_cast<size_t>(c)] = 1;
      comp.path.push_back({{c, d.x_row(c)}, MarkerKind::X});
      comp.path.push_back({{c, d.o_row(c)}, MarkerKind::O});
      c = d.x_col(d.o_row(c));  // horizontal segment O -> X within the O's row
    } while (c != start);
    components.push_back(std::move(comp));
  }

  std::sort(components.begin(), components.end(),
            [](const Component& a, const Component& b) { return a.path.front() < b.path.front(); });
  return components;
}

std::vector<Crossing> crossings(const GridDiagram& d) {
  const int n = d.index();
  std::vector<Crossing> out;
  for (int c = 0; c < n; ++c) {
    const int xr = d.x_row(c), orow = d.o_row(c);
    const int vlo = std::min(xr, orow), vhi = std::max(xr, orow);
    for (int r = vlo + 1; r < vhi; ++r) {
      const int xc = d.x_col(r), oc = d.o_col(r);
      const int hlo = std::min(xc, oc), hhi = std::max(xc, oc);
      if (hlo < c && c < hhi) {
        const int vdir = orow > xr ? 1 : -1;   // vertical travels X -> O
        const int hdir = xc > oc ? 1 : -1;     // horizontal travels O -> X
        out.push_back({c, r, hdir * vdir});
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const Crossing& a, const Crossing& b) {
    if (a.col != b.col) return a.col < b.col;
    return a.row < b.row;
  });
  return out;
}

int writhe(const GridDiagram& d) {
  int w = 0;
  for (const Crossing& c : crossings(d)) w += c.sign;
  return w;
}

GridDiagram transpose(const GridDiagram& d) {
  const int n = d.index();
  std::vector<int> xs(static_cast<size_t>(n)), os(static_cast<size_t>(n));
  for (int r = 0; r < n; ++r) {
    // X at (c,r) becomes O at (r,c); O at (c,r) becomes X at (r,c).
    os[static_cast<size_t>(r)] = d.x_col(r);
    xs[static_cast<size_t>(r)] = d.o_col(r);
  }
  return GridDiagram::make(n, std::move(xs), std::move(os));
}

}  // namespace gridknot
