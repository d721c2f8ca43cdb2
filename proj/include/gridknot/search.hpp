#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gridknot/arcword.hpp"
#include "gridknot/grid.hpp"
#include "gridknot/moves.hpp"

namespace gridknot {

// Caps for the planar-isotopy search. The search never visits a diagram whose
// index exceeds max_grid_index, never returns a certificate longer than
// max_moves, and gives up after max_states distinct diagrams.
struct SearchBudget {
  int max_grid_index = 8;
  int max_moves = 8;
  int max_states = 200000;
};

// A replayable proof that start and finish are grid planar isotopic: every
// step classifies as a planar isotopy step on the diagram it applies to.
struct IsotopyCertificate {
  GridDiagram start;
  GridDiagram finish;
  std::vector<Move> moves;
};

enum class SearchVerdict : std::uint8_t {
  Found,                // certificate produced
  DistinctByInvariant,  // a planar invariant separates the diagrams
  BudgetExhausted,      // no proof either way within the budget
};

struct SearchResult {
  SearchVerdict verdict = SearchVerdict::BudgetExhausted;
  std::optional<IsotopyCertificate> certificate;  // set exactly for Found
  std::string separating_invariant;               // set for DistinctByInvariant
};

// Bounded bidirectional breadth-first search over planar isotopy steps (kink
// stabilizations and destabilizations, un-nested and P commutations, and
// crossing transfers taken as single composite steps). Quick-rejects on
// component count, crossing count and writhe before searching. Returns the
// shortest certificate; ties break to the lexicographically least move
// sequence in canonical move order, so equal inputs give equal output.
SearchResult bfs_equivalent(const GridDiagram& a, const GridDiagram& b,
                            const SearchBudget& budget = {});

// Replays the certificate from its start diagram, requiring every step to
// classify as a planar isotopy step and the result to equal finish.
bool verify_certificate(const IsotopyCertificate& c);

// Planar moves on `a` that make arc_a's turn sequence equal arc_b's.
// The arcs' endpoints are taken to be identified by superposing the two
// diagrams, so the checkable preconditions are that the arcs agree on
// their initial and final segment directions (else EndpointMismatch) and
// that their turn words have the same excess of left over right turns
// (else NetTurnMismatch; the excess is a planar invariant of an arc,
// finer than the mod-4 net).
// The alignment itself runs as a bounded search, so arrangements whose
// obstructing arcs need long detours raise ObstructedByOtherArcs.
std::vector<Move> align_arcs(const GridDiagram& a, const GridArc& arc_a,
                             const GridDiagram& b, const GridArc& arc_b);

}  // namespace gridknot
