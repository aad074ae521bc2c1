#ifndef PM4COVER_GRAPH_LEVEL_HPP
#define PM4COVER_GRAPH_LEVEL_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "pm4cover/cover_engine.hpp"
#include "pm4cover/pole.hpp"

namespace pm4cover {

// Closed cubic multigraph; parallel edges are distinct edge indices.
struct CubicGraph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;

    static CubicGraph create(int n, std::vector<std::pair<int, int>> edges);  // DegreeError
    std::vector<std::vector<std::pair<int, int>>> adjacency() const;          // (edge, other)
};

// A 2-factor of two odd circuits joined by exactly three cross edges, with
// its complementary perfect matching split into spokes and internal chords,
// and the bookkeeping to move between the graph and the two derived poles.
struct TwoFactorSplit {
    std::vector<int> circuit1, circuit2;    // vertex cycles in traversal order
    std::array<int, 3> spoke_edges{};       // graph edge indices between the circuits
    std::vector<int> chord_edges1, chord_edges2;
    ThreePole pole1, pole2;
    std::vector<int> g_to_p1, g_to_p2;      // vertex -> pole position, -1 on the other side
    std::array<int, 3> pairing{};           // spoke k of pole1 merges with spoke pairing[k] of pole2
    std::vector<int> h1_to_g, c1_to_g;      // pole edge -> graph edge index
    std::vector<int> h2_to_g, c2_to_g;
};

// First (lexicographic) perfect matching whose complement is a 2-factor of
// two odd circuits with exactly three cross edges, or nullopt.
std::optional<TwoFactorSplit> find_two_odd_circuit_factor(const CubicGraph& g);

// Merge the dangling spokes pairwise; pole1 keeps its positions, pole2 is
// offset by pole1's vertex count.
std::pair<CubicGraph, TwoFactorSplit> compose_two_circuit_graph(const ThreePole& pole1,
                                                                const ThreePole& pole2,
                                                                const std::array<int, 3>& pairing);

struct GraphCover {
    std::array<std::vector<int>, 4> matchings;  // graph edge indices
};

// Align the second cover's matchings 1..3 across the merged spokes and take
// unions; matching 4 is the complementary 1-factor.
GraphCover combine_covers(const TwoFactorSplit& split, const ProperCover& cover1,
                          const ProperCover& cover2);

std::vector<std::string> verify_graph_cover(const CubicGraph& g, const GraphCover& cover);

struct GraphCoverCertificate {
    TwoFactorSplit split;
    GraphCover cover;
    std::vector<TraceStep> trace1, trace2;
};

GraphCoverCertificate cover_two_circuit_graph(const CubicGraph& g,
                                              std::optional<TwoFactorSplit> split = std::nullopt);

// Rebuild the full split bookkeeping from the two circuits alone.
TwoFactorSplit split_from_circuits(const CubicGraph& g, const std::vector<int>& circuit1,
                                   const std::vector<int>& circuit2);

} // namespace pm4cover

#endif
