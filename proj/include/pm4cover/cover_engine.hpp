#ifndef PM4COVER_COVER_ENGINE_HPP
#define PM4COVER_COVER_ENGINE_HPP

#include <optional>
#include <string>
#include <vector>

#include "pm4cover/pole.hpp"

namespace pm4cover {

enum class TraceRule { ThreeOdd, Len2, UniqueExterior, Suppress };

const char* trace_rule_name(TraceRule rule);
std::optional<TraceRule> trace_rule_from_name(const std::string& name);

struct TraceStep {
    TraceRule rule;
    int size_before = 0;
    int size_after = 0;
    std::string detail;

    bool operator==(const TraceStep&) const = default;
};

struct CoverOutcome {
    ProperCover cover;
    std::vector<TraceStep> trace;
};

// Engine failure carries whatever trace was accumulated so callers can still
// emit a partial certificate.
struct EngineError : Error {
    std::vector<TraceStep> partial_trace;
    EngineError(Error base, std::vector<TraceStep> trace)
        : Error(base), partial_trace(std::move(trace)) {}
};

// The construction behind the main result: dispatches on the segment profile
// (all segments odd; a length-2 segment; an even segment with a unique
// exterior chord; otherwise both even segments are chord-rich and an
// alternating circuit gets suppressed) and recurses on strictly smaller poles.
CoverOutcome compute_proper_cover(const ThreePole& pole);

// All-odd profile: chords form matching 4, segment between v_a and v_b
// alternates the complementary simple and double labels.
ProperCover cover_three_odd(const ThreePole& pole);

// Length-2 first even role: 3-edge-colour the apex closure (quad-reduction
// route first, exact backtracking as the authority) and read off the cover.
ProperCover cover_with_len2_segment(const ThreePole& pole, std::string* route_note = nullptr);

// Invertible bookkeeping for the vertex-removing reductions.
struct ReductionRecord {
    enum class Variant { UniqueExterior, InductionFront, InductionBack };
    Variant variant;
    ThreePole original, reduced;
    std::vector<int> removed;                        // old positions, ascending
    std::vector<int> old_to_new;                     // -1 for removed
    std::vector<int> removed_chord_indices;          // into original.chords
    std::optional<std::pair<int, int>> inserted_chord;  // reduced coordinates
    std::vector<int> new_h_to_old_h;                 // -1 for inserted circuit edges
    std::vector<int> new_chord_to_old;               // -1 for the inserted chord
    // UniqueExterior only:
    int q_pos = -1;                                  // reduced position of the new vertex
    int u_old = -1;                                  // outside end of the unique exterior chord
    std::vector<int> e1_h_edges_old;                 // segment's circuit edges, v1 to v3
    // Induction only: old positions u1', u1, u2, u2' of the replacement path.
    std::array<int, 4> bridge_path{-1, -1, -1, -1};
};

// Replace the interior of a >=4 even segment with a unique exterior chord by
// a single vertex q adjacent to both segment ends and to the chord's far end.
ReductionRecord reduce_unique_exterior(const ThreePole& pole);

// Pull a proper cover of the reduced pole back: the segment alternates the
// two simple labels seen at q, every chord losing an end gets the remaining
// label together with 4.
ProperCover extend_unique_exterior(const ProperCover& reduced_cover,
                                   const ReductionRecord& record);

struct SuppressionRecord {
    ThreePole original, reduced;
    std::vector<int> removed_chord_indices;  // circuit chords, into original.chords
    std::vector<int> smoothed;               // old positions, ascending
    std::vector<int> old_to_new;             // -1 for smoothed
    struct PathEdge {
        int old_h;        // old circuit edge index
        bool in_circuit;  // edge lay on the suppressed circuit
        bool operator==(const PathEdge&) const = default;
    };
    std::vector<std::vector<PathEdge>> paths;  // per reduced circuit edge, odd alternating
    std::vector<int> new_chord_to_old;
};

// Remove an alternating circuit's chords and smooth the degree-2 vertices.
SuppressionRecord suppress_alternating(const ThreePole& pole, const AlternatingCircuit& circ);

// Pull a proper cover of the suppressed pole back along the odd paths.
ProperCover extend_through_suppression(const ProperCover& reduced_cover,
                                       const SuppressionRecord& record);

struct CircuitSearch {
    AlternatingCircuit circuit;
    bool fallback_used = false;
    std::string note;
};

// Chord-rich two-even profile always admits an alternating circuit; found by
// the base construction at (4,4) and by segment-shortening reductions above.
CircuitSearch find_alternating_circuit(const ThreePole& pole);
CircuitSearch base_case_circuit(const ThreePole& pole);
CircuitSearch induction_step(const ThreePole& pole);

} // namespace pm4cover

#endif
