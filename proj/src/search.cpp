#include "gridknot/search.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <variant>

#include "gridknot/errors.hpp"

namespace gridknot {

namespace {

// Visited-set key: the (n, xs, os) triple verbatim. Translations and other
// symmetries are not planar isotopies, so no quotient is taken.
using Key = std::vector<int>;

Key key_of(const GridDiagram& d) {
  int n = d.index();
  Key k;
  k.reserve(static_cast<size_t>(2 * n + 1));
  k.push_back(n);
  for (int c = 0; c < n; ++c) k.push_back(d.x_row(c));
  for (int c = 0; c < n; ++c) k.push_back(d.o_row(c));
  return k;
}

// Planar steps leaving the current diagram, in canonical move order, pruned
// to the index cap. Transfers appear as single composite steps; raw nested
// interchanges are never generated.
std::vector<std::pair<Move, GridDiagram>> planar_neighbors(const GridDiagram& d, int max_index) {
  std::vector<std::pair<Move, GridDiagram>> out;
  std::vector<Move> ms = enumerate_moves(
      d, [](const Classification& c) { return is_planar_isotopy_step(c.cls); });
  for (const Move& m : ms) {
    if (std::holds_alternative<StabMove>(m) && d.index() >= max_index) continue;
    out.emplace_back(m, apply_move(d, m));
  }
  return out;
}

std::string separating_invariant_of(const GridDiagram& a, const GridDiagram& b) {
  if (trace(a).size() != trace(b).size()) return "component count";
  if (crossings(a).size() != crossings(b).size()) return "crossing count";
  if (writhe(a) != writhe(b)) return "writhe";
  return "";
}

// Lexicographically least path of length exactly `total` from `d` to the key
// `goal`, guided by the exact distance maps the two search waves produced.
// dist_a is complete to depth_a, dist_b to depth_b; a state's absence from a
// map proves its distance exceeds that map's depth.
struct Reconstructor {
  const std::map<Key, int>& dist_a;
  const std::map<Key, int>& dist_b;
  int depth_a, depth_b, total, max_index;
  const Key& goal;
  std::set<std::pair<Key, int>> dead;

  bool run(const GridDiagram& d, int i, std::vector<Move>& path) {
    if (i == total) return key_of(d) == goal;
    Key k = key_of(d);
    if (dead.count({k, i})) return false;
    int remaining = total - i;
    for (auto& [m, nd] : planar_neighbors(d, max_index)) {
      Key nk = key_of(nd);
      bool viable;
      if (remaining - 1 <= depth_b) {
        auto it = dist_b.find(nk);
        viable = it != dist_b.end() && it->second == remaining - 1;
      } else {
        auto it = dist_a.find(nk);
        viable = it != dist_a.end() && it->second == i + 1;
      }
      if (!viable) continue;
      path.push_back(m);
      if (run(nd, i + 1, path)) return true;
      path.pop_back();
    }
    dead.insert({std::move(k), i});
    return false;
  }
};

}  // namespace

SearchResult bfs_equivalent(const GridDiagram& a, const GridDiagram& b,
                            const SearchBudget& budget) {
  if (budget.max_grid_index <= 0 || budget.max_moves <= 0 || budget.max_states <= 0)
    fail(Errc::IndexOutOfRange, "search budget fields must be positive");

  if (std::string inv = separating_invariant_of(a, b); !inv.empty())
    return {SearchVerdict::DistinctByInvariant, std::nullopt, inv};

  Key ka = key_of(a), kb = key_of(b);
  if (ka == kb) return {SearchVerdict::Found, IsotopyCertificate{a, b, {}}, ""};
  if (a.index() > budget.max_grid_index || b.index() > budget.max_grid_index)
    return {SearchVerdict::BudgetExhausted, std::nullopt, ""};

  // Two breadth-first waves, one from each endpoint; planar steps invert to
  // planar steps, so both waves walk the same undirected move graph. A meet
  // is recorded whenever a state enters one wave while sitting in the other,
  // and once the explored depths add up to the best meet, that meet is the
  // exact distance.
  std::map<Key, int> dist_a{{ka, 0}}, dist_b{{kb, 0}};
  std::vector<GridDiagram> front_a{a}, front_b{b};
  int depth_a = 0, depth_b = 0;
  constexpr int kUnmet = std::numeric_limits<int>::max();
  int best = kUnmet;

  while ((best == kUnmet || best > depth_a + depth_b) &&
         depth_a + depth_b < budget.max_moves && !(front_a.empty() && front_b.empty()) &&
         static_cast<int>(dist_a.size() + dist_b.size()) <= budget.max_states) {
    bool expand_a = !front_a.empty() && (front_b.empty() || front_a.size() <= front_b.size());
    std::vector<GridDiagram>& front = expand_a ? front_a : front_b;
    std::map<Key, int>& dist = expand_a ? dist_a : dist_b;
    std::map<Key, int>& other = expand_a ? dist_b : dist_a;
    int new_depth = (expand_a ? depth_a : depth_b) + 1;

    std::vector<GridDiagram> next;
    for (const GridDiagram& d : front) {
      for (auto& [m, nd] : planar_neighbors(d, budget.max_grid_index)) {
        Key k = key_of(nd);
        if (!dist.emplace(k, new_depth).second) continue;
        if (auto it = other.find(k); it != other.end())
          best = std::min(best, new_depth + it->second);
        next.push_back(std::move(nd));
      }
    }
    front = std::move(next);
    (expand_a ? depth_a : depth_b) = new_depth;
  }

  if (best == kUnmet || best > budget.max_moves)
    return {SearchVerdict::BudgetExhausted, std::nullopt, ""};

  Reconstructor rec{dist_a, dist_b, depth_a, depth_b, best, budget.max_grid_index, kb, {}};
  std::vector<Move> path;
  if (!rec.run(a, 0, path))
    return {SearchVerdict::BudgetExhausted, std::nullopt, ""};  // unreachable by construction
  return {SearchVerdict::Found, IsotopyCertificate{a, b, std::move(path)}, ""};
}

bool verify_certificate(const IsotopyCertificate& c) {
  GridDiagram d = c.start;
  for (const Move& m : c.moves) {
    try {
      if (!is_planar_isotopy_step(classify(d, m).cls)) return false;
      d = apply_move(d, m);
    } catch (const GridError&) {
      return false;
    }
  }
  return d == c.finish;
}

namespace {

struct StepDir {
  int dx = 0, dy = 0;
};

StepDir dir_between(Cell u, Cell v) {
  StepDir s;
  s.dx = (v.col > u.col) - (v.col < u.col);
  s.dy = (v.row > u.row) - (v.row < u.row);
  return s;
}

bool same_dir(StepDir a, StepDir b) { return a.dx == b.dx && a.dy == b.dy; }

int turn_excess(const Arcword& w) {
  int e = 0;
  for (Turn t : w.letters) e += t == Turn::L ? 1 : -1;
  return e;
}

// Image of one marker cell under a move; nothing when the marker is deleted,
// split in two, or ambiguous.
std::optional<Cell> track_cell(const GridDiagram& d, const Move& m, Cell c) {
  std::optional<Cell> found;
  for (const auto& [mk, imgs] : marker_map(d, m)) {
    if (mk.cell != c) continue;
    if (imgs.size() != 1) return std::nullopt;
    if (found && !(*found == imgs[0])) return std::nullopt;
    found = imgs[0];
  }
  return found;
}

GridArc checked_arc(const GridDiagram& d, const GridArc& arc, const char* side) {
  if (arc.corners.size() < 2)
    fail(Errc::EndpointMismatch, std::string(side) + " arc needs at least two cells");
  GridArc got = extract_arc(d, arc.corners.front(), arc.corners.back());
  if (!(got.corners == arc.corners))
    fail(Errc::EndpointMismatch, std::string(side) + " arc does not follow its diagram");
  return got;
}

}  // namespace

std::vector<Move> align_arcs(const GridDiagram& a, const GridArc& arc_a, const GridDiagram& b,
                             const GridArc& arc_b) {
  GridArc ea = checked_arc(a, arc_a, "first");
  GridArc eb = checked_arc(b, arc_b, "second");

  // The endpoints are identified by the superposition, so what remains
  // checkable is how the arcs leave and enter them.
  if (!same_dir(dir_between(ea.corners[0], ea.corners[1]),
                dir_between(eb.corners[0], eb.corners[1])))
    fail(Errc::EndpointMismatch, "initial segments disagree");

  Arcword target = arc_word(eb);
  if (turn_excess(arc_word(ea)) != turn_excess(target))
    fail(Errc::NetTurnMismatch, "arcs have different net turns");

  // with equal initial directions and equal turn excess this cannot fire,
  // but a malformed caller input should not start a search
  size_t la = ea.corners.size(), lb = eb.corners.size();
  if (!same_dir(dir_between(ea.corners[la - 2], ea.corners[la - 1]),
                dir_between(eb.corners[lb - 2], eb.corners[lb - 1])))
    fail(Errc::EndpointMismatch, "final segments disagree");

  if (arc_word(ea) == target) return {};

  // Bounded breadth-first alignment: walk planar moves on the first diagram,
  // re-reading the arc between the tracked endpoints after every step, until
  // its turn word equals the target's. Canonical expansion order makes the
  // first hit the lexicographically least shortest sequence.
  constexpr int kMaxDepth = 5;
  constexpr size_t kMaxStates = 40000;
  int max_index = std::max(a.index(), b.index()) + 2;

  struct Node {
    GridDiagram d;
    Cell from, to;
    std::vector<Move> path;
  };
  auto node_key = [](const Node& n) {
    Key k = key_of(n.d);
    k.push_back(n.from.col);
    k.push_back(n.from.row);
    k.push_back(n.to.col);
    k.push_back(n.to.row);
    return k;
  };

  std::deque<Node> queue{{a, ea.corners.front(), ea.corners.back(), {}}};
  std::set<Key> seen{node_key(queue.front())};

  while (!queue.empty()) {
    Node cur = std::move(queue.front());
    queue.pop_front();
    if (static_cast<int>(cur.path.size()) >= kMaxDepth) continue;
    for (auto& [m, nd] : planar_neighbors(cur.d, max_index)) {
      std::optional<Cell> nf = track_cell(cur.d, m, cur.from);
      std::optional<Cell> nt = track_cell(cur.d, m, cur.to);
      if (!nf || !nt) continue;
      Node nxt{std::move(nd), *nf, *nt, cur.path};
      nxt.path.push_back(m);
      Key k = node_key(nxt);
      if (!seen.insert(std::move(k)).second) continue;
      GridArc cand;
      try {
        cand = extract_arc(nxt.d, nxt.from, nxt.to);
      } catch (const GridError&) {
        continue;
      }
      if (arc_word(cand) == target) return nxt.path;
      if (seen.size() >= kMaxStates) fail(Errc::ObstructedByOtherArcs,
                                          "alignment search exceeded its state budget");
      queue.push_back(std::move(nxt));
    }
  }
  fail(Errc::ObstructedByOtherArcs, "alignment needs more moves than the budget allows");
}

}  // namespace gridknot
