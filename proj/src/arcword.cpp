#include "gridknot/arcword.hpp"

#include <algorithm>

namespace gridknot {

Arcword Arcword::parse(const std::string& text) {
  Arcword w;
  if (text == "I" || text.empty()) return w;
  for (char ch : text) {
    if (ch == 'L')
      w.letters.push_back(Turn::L);
    else if (ch == 'R')
      w.letters.push_back(Turn::R);
    else
      fail(Errc::ParseError, std::string("arcword letter '") + ch + "'");
  }
  return w;
}

std::string Arcword::str() const {
  if (letters.empty()) return "I";
  std::string s;
  s.reserve(letters.size());
  for (Turn t : letters) s.push_back(t == Turn::L ? 'L' : 'R');
  return s;
}

Arcword reduce_arcword(const Arcword& w) {
  std::vector<Turn> out;
  out.reserve(w.letters.size());
  // A left-to-right stack pass deletes the leftmost adjacent opposite pair
  // first and every pair its removal exposes, matching repeated leftmost-pair
  // deletion.
  for (Turn t : w.letters) {
    if (!out.empty() && out.back() != t)
      out.pop_back();
    else
      out.push_back(t);
  }
  return Arcword{std::move(out)};
}

int net_turn(const Arcword& w) {
  int d = 0;
  for (Turn t : w.letters) d += t == Turn::L ? 1 : -1;
  return ((d % 4) + 4) % 4;
}

namespace {

struct Dir {
  int dx = 0;
  int dy = 0;
};

Dir step_dir(Cell a, Cell b) {
  if (a.col == b.col && a.row != b.row) return {0, b.row > a.row ? 1 : -1};
  if (a.row == b.row && a.col != b.col) return {b.col > a.col ? 1 : -1, 0};
  fail(Errc::EndpointMismatch, "arc corners not axis-aligned");
}

}  // namespace

Arcword arc_word(const GridArc& arc) {
  Arcword w;
  if (arc.corners.size() < 3) return w;
  for (size_t i = 1; i + 1 < arc.corners.size(); ++i) {
    Dir in = step_dir(arc.corners[i - 1], arc.corners[i]);
    Dir out = step_dir(arc.corners[i], arc.corners[i + 1]);
    int cross = in.dx * out.dy - in.dy * out.dx;
    if (cross == 0) fail(Errc::EndpointMismatch, "arc corner without a turn");
    w.letters.push_back(cross > 0 ? Turn::L : Turn::R);
  }
  return w;
}

GridArc extract_arc(const GridDiagram& d, Cell from, Cell to) {
  for (const Component& comp : trace(d)) {
    if (comp.degenerate) continue;
    const auto& path = comp.path;
    auto at = [&](size_t i) { return path[i % path.size()].cell; };
    for (size_t s = 0; s < path.size(); ++s) {
      if (at(s) != from) continue;
      GridArc arc;
      arc.corners.push_back(at(s));
      for (size_t k = 1; k <= path.size(); ++k) {
        arc.corners.push_back(at(s + k));
        if (at(s + k) == to) return arc;
      }
      arc.corners.clear();
    }
  }
  fail(Errc::EndpointMismatch, "arc endpoints not on a common component");
}

}  // namespace gridknot
