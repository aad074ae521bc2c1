#ifndef PM4COVER_ORACLE_HPP
#define PM4COVER_ORACLE_HPP

#include <optional>
#include <vector>

#include "pm4cover/edge_colouring.hpp"
#include "pm4cover/graph_level.hpp"
#include "pm4cover/pole.hpp"

namespace pm4cover {

// Desk-scale safety limits; the CLI lets PM4COVER_SIZE_CAP raise them.
struct OracleCaps {
    int matching_vertices = 30;
    int cover_vertices = 17;
    int circuit_vertices = 20;
};

OracleCaps& oracle_caps();

// Complete lists, ordered lexicographically on sorted edge encodings
// (spokes before chords before circuit edges for poles).
std::vector<std::vector<EdgeRef>> enumerate_perfect_matchings(const ThreePole& pole);
std::vector<std::vector<int>> enumerate_perfect_matchings(const CubicGraph& g);

// Exact backtracking over per-edge label sets with per-vertex exactness
// pruning; first solution in deterministic order, nullopt when none exists.
std::optional<ProperCover> brute_force_proper_cover(const ThreePole& pole);

struct KCoverResult {
    bool coverable = false;
    std::vector<std::vector<int>> witness;  // perfect matchings as edge-index sets
};

// Can k of the graph's perfect matchings cover every edge? Exact search.
KCoverResult covers_with_k_matchings(const CubicGraph& g, int k);

// All alternating circuits up to rotation and reflection, sorted.
std::vector<AlternatingCircuit> brute_alternating_circuits(const ThreePole& pole);

// First alternating circuit in deterministic order; no size cap (serves as
// the engine's last-resort fallback).
std::optional<AlternatingCircuit> find_any_alternating_circuit(const ThreePole& pole);

std::optional<EdgeColouring> is_three_edge_colourable(const SmallMultiGraph& g);
std::optional<EdgeColouring> is_three_edge_colourable(const CubicGraph& g);

// Cover check that materialises the four matchings and verifies each one
// spans the pole, independent of the law-based verifier.
bool independent_cover_check(const ThreePole& pole, const ProperCover& cover);

SmallMultiGraph to_multigraph(const CubicGraph& g);

} // namespace pm4cover

#endif
