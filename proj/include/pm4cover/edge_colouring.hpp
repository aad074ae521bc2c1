#ifndef PM4COVER_EDGE_COLOURING_HPP
#define PM4COVER_EDGE_COLOURING_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pm4cover/pole.hpp"

namespace pm4cover {

// Small undirected multigraph; parallel edges are distinct edge indices.
// `circuit_edges`, when nonempty, is a designated Hamiltonian circuit given
// as a cyclic edge-index sequence.
struct SmallMultiGraph {
    int vertex_count = 0;
    std::vector<std::pair<int, int>> edges;
    std::vector<int> circuit_edges;

    // per vertex: (edge index, other endpoint)
    std::vector<std::vector<std::pair<int, int>>> adjacency() const;
};

// colour per edge index, 1..3 (0 = unset)
using EdgeColouring = std::vector<int>;

std::vector<std::string> colouring_violations(const SmallMultiGraph& g, const EdgeColouring& c);

// allowed = bitmask over colours 1..3 (bit i-1)
struct ColourConstraint {
    int edge;
    std::uint8_t allowed;
};

// Exact search with forced-move propagation and most-constrained-edge
// ordering. Returns the first colouring in deterministic order, or nullopt
// when none satisfies the constraints.
std::optional<EdgeColouring> backtrack_colouring(const SmallMultiGraph& g,
                                                 const std::vector<ColourConstraint>& constraints = {});

// The pole with its three spoke ends attached to a fresh apex vertex, plus
// the landmarks of the quadrilateral apex--v1--mid--v3 that the length-2
// segment creates. Requires the first even role to have length 2.
struct ApexClosure {
    SmallMultiGraph graph;
    int n_pole = 0;
    int apex = -1;
    int v1 = -1, mid = -1, v3 = -1, v2 = -1;
    int mid_partner = -1;       // chord partner of mid
    int v1_outer = -1;          // circuit neighbour of v1 outside the segment
    int v3_outer = -1;
    std::vector<int> h_edge;    // closure edge index per pole circuit edge
    std::vector<int> chord_edge;
    std::array<int, 3> spoke_edge{};  // closure edge joining spoke k's end to the apex
};

ApexClosure build_apex_closure(const ThreePole& pole);

// Closure with the quadrilateral removed and 3-regularity restored by two
// bridges: bridge_outer joins v1_outer to v3_outer, bridge_mid joins
// mid_partner to v2. Inherits a designated Hamiltonian circuit.
struct QuadReduction {
    SmallMultiGraph b;
    std::vector<int> closure_to_b;           // vertex map, -1 for removed
    std::vector<int> b_to_closure_vertex;
    std::vector<int> b_edge_to_closure;      // closure edge index, -1 for bridges
    int bridge_outer = -1;                   // edge indices in b
    int bridge_mid = -1;
};

QuadReduction build_quad_reduction(const ApexClosure& closure);

// Alternate 1,2 along the designated circuit starting at the lowest vertex;
// everything else gets 3.
EdgeColouring hamiltonian_colouring(const SmallMultiGraph& g);

// Swap two-colour chains until edges f1 and f2 share a colour; gives up
// after `budget` swaps.
std::optional<EdgeColouring> kempe_equalize(const SmallMultiGraph& g, EdgeColouring colouring,
                                            int f1, int f2, int budget);

// Extend a reduced colouring with equal bridge colours back to the closure.
EdgeColouring lift_through_4cycle(const ApexClosure& closure, const QuadReduction& reduction,
                                  const EdgeColouring& b_colouring);

// Permute colours so the spoke at position v_i lands in matching i, then read
// off the cover: circuit edges simply covered by their class, chords doubly
// covered with matching 4.
ProperCover colouring_to_cover(const ThreePole& pole, const ApexClosure& closure,
                               const EdgeColouring& colouring);

} // namespace pm4cover

#endif
