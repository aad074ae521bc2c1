#ifndef PM4COVER_POLE_HPP
#define PM4COVER_POLE_HPP

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "pm4cover/error.hpp"

namespace pm4cover {

// Labels 1..4 packed as a bitmask, bit i-1 for matching i.
using LabelSet = std::uint8_t;

constexpr LabelSet label(int i) { return static_cast<LabelSet>(1u << (i - 1)); }
constexpr LabelSet labels(int i, int j) { return static_cast<LabelSet>(label(i) | label(j)); }
constexpr bool has_label(LabelSet s, int i) { return (s & label(i)) != 0; }
int label_count(LabelSet s);
std::vector<int> label_list(LabelSet s);

// Hamiltonian cubic 3-pole. Vertices are positions 0..n-1 along the
// distinguished circuit; the circuit edge i joins i and (i+1) mod n.
// Every position carries exactly one non-circuit edge: a dangling spoke at
// the three positions in `spokes`, a chord everywhere else.
struct ThreePole {
    int n = 0;
    std::array<int, 3> spokes{};                // end positions of spokes e1,e2,e3
    std::vector<std::pair<int, int>> chords;    // sorted pairs, sorted list

    // Derived lookups, filled by validate_pole.
    std::vector<int> partner;    // chord partner per position, -1 at spoke ends
    std::vector<int> chord_at;   // index into chords per position, -1 at spoke ends

    int h_next(int i) const { return (i + 1) % n; }
    int h_prev(int i) const { return (i + n - 1) % n; }
    int spoke_index(int pos) const;            // 0..2, or -1
    bool is_spoke_end(int pos) const { return spoke_index(pos) >= 0; }
    int chord_index(int u, int v) const;       // -1 if absent

    bool operator==(const ThreePole& o) const {
        return n == o.n && spokes == o.spokes && chords == o.chords;
    }
};

ThreePole validate_pole(int n, const std::array<int, 3>& spokes,
                        std::vector<std::pair<int, int>> chords);

enum class EdgeKind { H, Chord, Spoke };

// H: a = circuit-edge index (joins a and (a+1) mod n), b = (a+1) mod n.
// Chord: endpoints a < b. Spoke: a = end position, b = -1.
struct EdgeRef {
    EdgeKind kind;
    int a = -1;
    int b = -1;

    static EdgeRef h(int index, int n) { return {EdgeKind::H, index, (index + 1) % n}; }
    static EdgeRef chord(int u, int v) {
        return {EdgeKind::Chord, u < v ? u : v, u < v ? v : u};
    }
    static EdgeRef spoke(int pos) { return {EdgeKind::Spoke, pos, -1}; }

    bool operator==(const EdgeRef&) const = default;
    auto operator<=>(const EdgeRef&) const = default;
    std::string to_string() const;
};

// Segment of the circuit between two spoke ends, not containing the third.
struct Segment {
    int from_pos = -1;           // bounding spoke ends
    int to_pos = -1;
    int length = 0;              // edge count
    std::vector<int> inner;      // inner positions ordered from from_pos to to_pos
    int exterior_chords = 0;     // chords with exactly one end among `inner`
    int interior_chords = 0;     // chords with both ends among `inner`
};

enum class ProfileKind { ThreeOdd, TwoEvenOneOdd };

// Role-resolved view of the three segments. seg[0] runs v1..v3, seg[1] runs
// v2..v3, seg[2] runs v1..v2; in the two-even case seg[0] and seg[1] are the
// even segments and seg[2] the odd one. role[r] is the input spoke index
// acting as v_{r+1}: when several assignments fit, input spoke order wins.
struct SegmentProfile {
    ProfileKind kind = ProfileKind::ThreeOdd;
    std::array<int, 3> role{0, 1, 2};
    std::array<Segment, 3> seg;

    bool two_even() const { return kind == ProfileKind::TwoEvenOneOdd; }
    // Both even segments carry at least three exterior chords.
    bool rich() const {
        return two_even() && seg[0].exterior_chords >= 3 && seg[1].exterior_chords >= 3;
    }
};

SegmentProfile segment_profile(const ThreePole& pole);

// Dihedral position map plus a spoke-role permutation: positions are first
// optionally reflected (p -> n-p mod n), then rotated; new spoke i is the old
// spoke spoke_perm[i].
struct Relabeling {
    int n = 0;
    bool reflect = false;
    int rotation = 0;
    std::array<int, 3> spoke_perm{0, 1, 2};

    int map(int pos) const {
        int q = reflect ? (n - pos) % n : pos;
        return (q + rotation) % n;
    }
    Relabeling inverse() const;
    int map_h_edge(int old_index) const {
        return reflect ? map((old_index + 1) % n) : map(old_index);
    }
};

ThreePole apply_relabeling(const ThreePole& pole, const Relabeling& rel);

// Relabel so that profile segment `segment_index` (0 or 1) becomes the
// segment between v1 = 0 and v3, laid out on positions 0..length. Throws
// RoleUnavailable for an odd segment.
std::pair<ThreePole, Relabeling> relabel_to_e1(const ThreePole& pole, int segment_index);

// Edge -> set of matchings 1..4 it belongs to, aligned with the pole:
// h[i] for circuit edge i, chord[j] for chords[j], spoke[k] for spoke k.
struct ProperCover {
    std::vector<LabelSet> h;
    std::vector<LabelSet> chord;
    std::array<LabelSet, 3> spoke{};

    bool operator==(const ProperCover&) const = default;
    LabelSet get(const ThreePole& pole, const EdgeRef& e) const;
};

ProperCover transport_cover(const ProperCover& cover, const ThreePole& from,
                            const ThreePole& to, const Relabeling& rel);

struct CoverViolation {
    enum class Kind { EdgeLabel, VertexExactness, ChordLaw, SpokeLaw };
    Kind kind;
    int where;              // vertex position, edge index, or spoke index
    std::string detail;
};

struct CoverReport {
    std::vector<CoverViolation> violations;
    bool ok() const { return violations.empty(); }
    std::string to_string() const;
};

CoverReport verify_proper_cover(const ThreePole& pole, const ProperCover& cover);

// Closed walk alternating circuit edges and chords. vertices[k] is the
// common endpoint of edges[k-1] and edges[k] (cyclically); the walk runs
// vertices[k] -- edges[k] --> vertices[k+1].
struct AlternatingCircuit {
    std::vector<EdgeRef> edges;
    std::vector<int> vertices;

    bool operator==(const AlternatingCircuit&) const = default;
    AlternatingCircuit canonical() const;  // min vertex first, chord leaving it, lex direction
    std::string to_string() const;
};

AlternatingCircuit transport_circuit(const AlternatingCircuit& circ, const ThreePole& from,
                                     const Relabeling& rel);

struct CircuitReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

CircuitReport verify_alternating_circuit(const ThreePole& pole, const AlternatingCircuit& circ);

} // namespace pm4cover

#endif
