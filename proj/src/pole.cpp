#include "pm4cover/pole.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace pm4cover {

const char* err_name(Err code) {
    switch (code) {
        case Err::EvenOrder: return "EvenOrder";
        case Err::SpokeClash: return "SpokeClash";
        case Err::ChordCoverage: return "ChordCoverageError";
        case Err::LoopChord: return "LoopChord";
        case Err::WrongProfile: return "WrongProfile";
        case Err::RoleUnavailable: return "RoleUnavailable";
        case Err::InvalidCircuit: return "InvalidCircuit";
        case Err::ImproperInput: return "ImproperInput";
        case Err::InternalProofViolation: return "InternalProofViolation";
        case Err::ColouringUnavailable: return "ColouringUnavailable";
        case Err::OddCircuit: return "OddCircuit";
        case Err::UnequalBoundary: return "UnequalBoundary";
        case Err::DegenerateReduction: return "DegenerateReduction";
        case Err::SizeCap: return "SizeCap";
        case Err::InfeasibleSpec: return "InfeasibleSpec";
        case Err::RejectionBudgetExceeded: return "RejectionBudgetExceeded";
        case Err::Syntax: return "SyntaxError";
        case Err::Validation: return "ValidationError";
        case Err::Degree: return "DegreeError";
        case Err::Reference: return "ReferenceError";
        case Err::NoQualifyingTwoFactor: return "NoQualifyingTwoFactor";
    }
    return "UnknownError";
}

int label_count(LabelSet s) { return std::popcount(static_cast<unsigned>(s)); }

std::vector<int> label_list(LabelSet s) {
    std::vector<int> out;
    for (int i = 1; i <= 4; i++)
        if (has_label(s, i)) out.push_back(i);
    return out;
}

int ThreePole::spoke_index(int pos) const {
    for (int k = 0; k < 3; k++)
        if (spokes[k] == pos) return k;
    return -1;
}

int ThreePole::chord_index(int u, int v) const {
    if (u >= 0 && u < n && partner[u] == v) return chord_at[u];
    return -1;
}

ThreePole validate_pole(int n, const std::array<int, 3>& spokes,
                        std::vector<std::pair<int, int>> chords) {
    if (n < 3 || n % 2 == 0)
        throw Error(Err::EvenOrder, "vertex count must be odd and at least 3, got " +
                                        std::to_string(n));
    for (int k = 0; k < 3; k++) {
        if (spokes[k] < 0 || spokes[k] >= n)
            throw Error(Err::SpokeClash, "spoke position out of range");
        for (int l = k + 1; l < 3; l++)
            if (spokes[k] == spokes[l]) throw Error(Err::SpokeClash, "spokes must be distinct");
    }

    ThreePole pole;
    pole.n = n;
    pole.spokes = spokes;
    pole.partner.assign(n, -1);
    pole.chord_at.assign(n, -1);

    for (auto& c : chords) {
        if (c.first == c.second)
            throw Error(Err::LoopChord, "chord (" + std::to_string(c.first) + "," +
                                            std::to_string(c.second) + ") is a loop");
        if (c.first > c.second) std::swap(c.first, c.second);
    }
    std::sort(chords.begin(), chords.end());
    pole.chords = std::move(chords);

    for (int j = 0; j < static_cast<int>(pole.chords.size()); j++) {
        auto [u, v] = pole.chords[j];
        if (u < 0 || v >= n)
            throw Error(Err::ChordCoverage, "chord endpoint out of range");
        for (int w : {u, v}) {
            if (pole.spoke_index(w) >= 0)
                throw Error(Err::ChordCoverage,
                            "position " + std::to_string(w) + " carries both a spoke and a chord");
            if (pole.partner[w] != -1)
                throw Error(Err::ChordCoverage,
                            "position " + std::to_string(w) + " has two chords");
        }
        pole.partner[u] = v;
        pole.partner[v] = u;
        pole.chord_at[u] = j;
        pole.chord_at[v] = j;
    }
    for (int v = 0; v < n; v++)
        if (pole.partner[v] == -1 && pole.spoke_index(v) < 0)
            throw Error(Err::ChordCoverage,
                        "position " + std::to_string(v) + " has no chord and no spoke");
    return pole;
}

std::string EdgeRef::to_string() const {
    std::ostringstream os;
    switch (kind) {
        case EdgeKind::H: os << "h(" << a << "," << b << ")"; break;
        case EdgeKind::Chord: os << "c(" << a << "," << b << ")"; break;
        case EdgeKind::Spoke: os << "s(" << a << ")"; break;
    }
    return os.str();
}

namespace {

// Walk the circuit from `from` to `to` in direction `dir`, collecting inner positions.
std::vector<int> arc_inner(int n, int from, int to, int dir) {
    std::vector<int> inner;
    for (int p = (from + dir + n) % n; p != to; p = (p + dir + n) % n) inner.push_back(p);
    return inner;
}

Segment make_segment(const ThreePole& pole, int from, int to, int dir) {
    Segment s;
    s.from_pos = from;
    s.to_pos = to;
    s.inner = arc_inner(pole.n, from, to, dir);
    s.length = static_cast<int>(s.inner.size()) + 1;
    std::vector<char> is_inner(pole.n, 0);
    for (int v : s.inner) is_inner[v] = 1;
    for (auto [u, v] : pole.chords) {
        int ends = is_inner[u] + is_inner[v];
        if (ends == 1) s.exterior_chords++;
        if (ends == 2) s.interior_chords++;
    }
    return s;
}

// Direction (+1/-1) from segment endpoint `from` towards `to` avoiding `avoid`.
int arc_direction(int n, int from, int to, int avoid) {
    for (int p = (from + 1) % n; ; p = (p + 1) % n) {
        if (p == to) return 1;
        if (p == avoid) return -1;
    }
}

} // namespace

SegmentProfile segment_profile(const ThreePole& pole) {
    SegmentProfile prof;
    const auto& sp = pole.spokes;

    // Arc between spokes k and l (avoiding the third) for each unordered pair.
    auto segment_between = [&](int k, int l) {
        int third = 3 - k - l;
        int dir = arc_direction(pole.n, sp[k], sp[l], sp[third]);
        return make_segment(pole, sp[k], sp[l], dir);
    };

    // Parity of a segment equals the parity of arc length; count even arcs.
    int even_pairs[3][2] = {};
    int even_count = 0;
    for (int k = 0, idx = 0; k < 3; k++)
        for (int l = k + 1; l < 3; l++, idx++) {
            Segment s = segment_between(k, l);
            if (s.length % 2 == 0) {
                even_pairs[even_count][0] = k;
                even_pairs[even_count][1] = l;
                even_count++;
            }
        }
    internal_check(even_count == 0 || even_count == 2,
                   "a 3-pole has zero or two even segments");

    if (even_count == 0) {
        prof.kind = ProfileKind::ThreeOdd;
        prof.role = {0, 1, 2};
    } else {
        prof.kind = ProfileKind::TwoEvenOneOdd;
        // v3 is the spoke shared by the two even segments; the remaining two
        // act as v1, v2 keeping their input order.
        int count[3] = {};
        for (int e = 0; e < 2; e++) {
            count[even_pairs[e][0]]++;
            count[even_pairs[e][1]]++;
        }
        int v3 = -1;
        for (int k = 0; k < 3; k++)
            if (count[k] == 2) v3 = k;
        internal_check(v3 >= 0, "even segments share a spoke end");
        std::array<int, 3> role{};
        int slot = 0;
        for (int k = 0; k < 3; k++)
            if (k != v3) role[slot++] = k;
        role[2] = v3;
        prof.role = role;
    }

    prof.seg[0] = segment_between(prof.role[0], prof.role[2]);  // v1..v3
    prof.seg[1] = segment_between(prof.role[1], prof.role[2]);  // v2..v3
    prof.seg[2] = segment_between(prof.role[0], prof.role[1]);  // v1..v2
    internal_check(prof.seg[0].length + prof.seg[1].length + prof.seg[2].length == pole.n,
                   "segment lengths sum to n");
    return prof;
}

Relabeling Relabeling::inverse() const {
    Relabeling inv;
    inv.n = n;
    inv.reflect = reflect;
    inv.rotation = reflect ? rotation : (n - rotation) % n;
    for (int i = 0; i < 3; i++) inv.spoke_perm[spoke_perm[i]] = i;
    return inv;
}

ThreePole apply_relabeling(const ThreePole& pole, const Relabeling& rel) {
    std::array<int, 3> spokes{};
    for (int i = 0; i < 3; i++) spokes[i] = rel.map(pole.spokes[rel.spoke_perm[i]]);
    std::vector<std::pair<int, int>> chords;
    chords.reserve(pole.chords.size());
    for (auto [u, v] : pole.chords) chords.emplace_back(rel.map(u), rel.map(v));
    return validate_pole(pole.n, spokes, std::move(chords));
}

std::pair<ThreePole, Relabeling> relabel_to_e1(const ThreePole& pole, int segment_index) {
    if (segment_index < 0 || segment_index > 2)
        throw Error(Err::RoleUnavailable, "segment index out of range");
    SegmentProfile prof = segment_profile(pole);
    const Segment& target = prof.seg[segment_index];
    if (target.length % 2 != 0)
        throw Error(Err::RoleUnavailable, "an odd segment cannot take the first even role");

    // v1 = the target's endpoint away from v3, positions ascending through it.
    int v1 = target.from_pos;  // seg[0]: v1..v3, seg[1]: v2..v3 -- from_pos is the non-shared end
    int first_inner = target.inner.empty() ? target.to_pos : target.inner.front();

    Relabeling rel;
    rel.n = pole.n;
    if (first_inner == (v1 + 1) % pole.n) {
        rel.reflect = false;
        rel.rotation = (pole.n - v1) % pole.n;
    } else {
        rel.reflect = true;
        rel.rotation = v1;
    }
    int role_v1 = segment_index == 0 ? prof.role[0] : prof.role[1];
    int role_v2 = segment_index == 0 ? prof.role[1] : prof.role[0];
    rel.spoke_perm = {role_v1, role_v2, prof.role[2]};
    return {apply_relabeling(pole, rel), rel};
}

LabelSet ProperCover::get(const ThreePole& pole, const EdgeRef& e) const {
    switch (e.kind) {
        case EdgeKind::H: return h[e.a];
        case EdgeKind::Chord: {
            int j = pole.chord_index(e.a, e.b);
            if (j < 0) throw Error(Err::Reference, "chord " + e.to_string() + " not in pole");
            return chord[j];
        }
        case EdgeKind::Spoke: {
            int k = pole.spoke_index(e.a);
            if (k < 0) throw Error(Err::Reference, "spoke " + e.to_string() + " not in pole");
            return spoke[k];
        }
    }
    return 0;
}

ProperCover transport_cover(const ProperCover& cover, const ThreePole& from,
                            const ThreePole& to, const Relabeling& rel) {
    ProperCover out;
    out.h.assign(to.n, 0);
    out.chord.assign(to.chords.size(), 0);
    for (int i = 0; i < from.n; i++) out.h[rel.map_h_edge(i)] = cover.h[i];
    for (size_t j = 0; j < from.chords.size(); j++) {
        auto [u, v] = from.chords[j];
        int idx = to.chord_index(rel.map(u), rel.map(v));
        internal_check(idx >= 0, "relabeled chord exists");
        out.chord[idx] = cover.chord[j];
    }
    for (int i = 0; i < 3; i++) out.spoke[i] = cover.spoke[rel.spoke_perm[i]];
    return out;
}

std::string CoverReport::to_string() const {
    std::ostringstream os;
    for (const auto& v : violations) os << v.detail << "\n";
    return os.str();
}

CoverReport verify_proper_cover(const ThreePole& pole, const ProperCover& cover) {
    CoverReport report;
    auto add = [&](CoverViolation::Kind kind, int where, std::string detail) {
        report.violations.push_back({kind, where, std::move(detail)});
    };

    if (static_cast<int>(cover.h.size()) != pole.n ||
        cover.chord.size() != pole.chords.size()) {
        add(CoverViolation::Kind::EdgeLabel, -1, "cover shape does not match pole");
        return report;
    }

    auto check_size = [&](LabelSet s, const std::string& name, int where) {
        int c = label_count(s);
        if (c < 1 || c > 2)
            add(CoverViolation::Kind::EdgeLabel, where,
                name + " carries " + std::to_string(c) + " matchings (want 1 or 2)");
    };
    for (int i = 0; i < pole.n; i++) check_size(cover.h[i], EdgeRef::h(i, pole.n).to_string(), i);
    for (size_t j = 0; j < pole.chords.size(); j++)
        check_size(cover.chord[j],
                   EdgeRef::chord(pole.chords[j].first, pole.chords[j].second).to_string(),
                   static_cast<int>(j));
    for (int k = 0; k < 3; k++)
        check_size(cover.spoke[k], EdgeRef::spoke(pole.spokes[k]).to_string(), k);

    // Per-vertex exactness: each matching uses exactly one incident edge.
    for (int v = 0; v < pole.n; v++) {
        int hits[5] = {};
        auto tally = [&](LabelSet s) {
            for (int i = 1; i <= 4; i++)
                if (has_label(s, i)) hits[i]++;
        };
        tally(cover.h[pole.h_prev(v)]);
        tally(cover.h[v]);
        int k = pole.spoke_index(v);
        if (k >= 0)
            tally(cover.spoke[k]);
        else
            tally(cover.chord[pole.chord_at[v]]);
        for (int i = 1; i <= 4; i++)
            if (hits[i] != 1)
                add(CoverViolation::Kind::VertexExactness, v,
                    "vertex " + std::to_string(v) + ": matching " + std::to_string(i) +
                        " covers it " + std::to_string(hits[i]) + " times");
    }

    // Matching 4 is exactly the chords and spokes.
    for (int i = 0; i < pole.n; i++)
        if (has_label(cover.h[i], 4))
            add(CoverViolation::Kind::ChordLaw, i,
                "circuit edge " + EdgeRef::h(i, pole.n).to_string() + " lies in matching 4");
    for (size_t j = 0; j < pole.chords.size(); j++)
        if (!has_label(cover.chord[j], 4))
            add(CoverViolation::Kind::ChordLaw, static_cast<int>(j),
                "chord " +
                    EdgeRef::chord(pole.chords[j].first, pole.chords[j].second).to_string() +
                    " misses matching 4");

    // Spokes doubly covered, one in each of matchings 1..3.
    int spoke_partner_seen = 0;
    for (int k = 0; k < 3; k++) {
        LabelSet s = cover.spoke[k];
        if (!has_label(s, 4) || label_count(s) != 2) {
            add(CoverViolation::Kind::SpokeLaw, k,
                "spoke " + std::to_string(k + 1) + " is not doubly covered with matching 4");
            continue;
        }
        LabelSet other = static_cast<LabelSet>(s & ~label(4));
        if (spoke_partner_seen & other)
            add(CoverViolation::Kind::SpokeLaw, k,
                "two spokes share their non-4 matching");
        spoke_partner_seen |= other;
    }
    return report;
}

std::string AlternatingCircuit::to_string() const {
    std::ostringstream os;
    for (size_t i = 0; i < edges.size(); i++) {
        if (i) os << "-";
        os << edges[i].to_string();
    }
    return os.str();
}

AlternatingCircuit AlternatingCircuit::canonical() const {
    if (vertices.empty()) return *this;
    size_t m = vertices.size();
    size_t start = 0;
    for (size_t i = 1; i < m; i++)
        if (vertices[i] < vertices[start]) start = i;

    auto rotate_from = [&](size_t s, bool reverse) {
        AlternatingCircuit out;
        out.edges.reserve(m);
        out.vertices.reserve(m);
        for (size_t i = 0; i < m; i++) {
            if (!reverse) {
                out.vertices.push_back(vertices[(s + i) % m]);
                out.edges.push_back(edges[(s + i) % m]);
            } else {
                out.vertices.push_back(vertices[(s + m - i) % m]);
                out.edges.push_back(edges[(s + m - i - 1) % m]);
            }
        }
        return out;
    };

    AlternatingCircuit fwd = rotate_from(start, false);
    AlternatingCircuit rev = rotate_from(start, true);
    // Leave the minimum vertex through its chord; break ties by vertex order.
    auto key_ok = [](const AlternatingCircuit& c) {
        return !c.edges.empty() && c.edges[0].kind == EdgeKind::Chord;
    };
    if (key_ok(fwd) != key_ok(rev)) return key_ok(fwd) ? fwd : rev;
    return fwd.vertices <= rev.vertices ? fwd : rev;
}

AlternatingCircuit transport_circuit(const AlternatingCircuit& circ, const ThreePole& from,
                                     const Relabeling& rel) {
    AlternatingCircuit out;
    out.vertices.reserve(circ.vertices.size());
    out.edges.reserve(circ.edges.size());
    for (int v : circ.vertices) out.vertices.push_back(rel.map(v));
    for (const EdgeRef& e : circ.edges) {
        if (e.kind == EdgeKind::H)
            out.edges.push_back(EdgeRef::h(rel.map_h_edge(e.a), from.n));
        else if (e.kind == EdgeKind::Chord)
            out.edges.push_back(EdgeRef::chord(rel.map(e.a), rel.map(e.b)));
        else
            out.edges.push_back(EdgeRef::spoke(rel.map(e.a)));
    }
    return out.canonical();
}

CircuitReport verify_alternating_circuit(const ThreePole& pole, const AlternatingCircuit& circ) {
    CircuitReport report;
    auto fail = [&](std::string msg) { report.violations.push_back(std::move(msg)); };

    size_t m = circ.edges.size();
    if (m < 2 || m % 2 != 0) fail("circuit must have even length at least 2");
    if (circ.vertices.size() != m) fail("vertex sequence length must match edge count");
    if (!report.ok()) return report;

    for (size_t i = 0; i < m; i++) {
        const EdgeRef& e = circ.edges[i];
        if (e.kind == EdgeKind::Spoke) {
            fail("circuit contains spoke " + e.to_string());
            continue;
        }
        if (e.kind == circ.edges[(i + 1) % m].kind)
            fail("edges " + std::to_string(i) + "," + std::to_string((i + 1) % m) +
                 " do not alternate");
        if (e.kind == EdgeKind::H) {
            if (e.a < 0 || e.a >= pole.n || e.b != (e.a + 1) % pole.n)
                fail("invalid circuit edge " + e.to_string());
        } else if (pole.chord_index(e.a, e.b) < 0) {
            fail("chord " + e.to_string() + " not present in pole");
        }
    }
    if (!report.ok()) return report;

    for (size_t i = 0; i < m; i++) {
        int v = circ.vertices[i];
        int w = circ.vertices[(i + 1) % m];
        const EdgeRef& e = circ.edges[i];
        bool joins = (e.a == v && e.b == w) || (e.a == w && e.b == v);
        if (!joins)
            fail("edge " + e.to_string() + " does not join vertices " + std::to_string(v) +
                 " and " + std::to_string(w));
    }
    std::vector<int> sorted = circ.vertices;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        fail("circuit repeats a vertex");
    for (int v : circ.vertices)
        if (v < 0 || v >= pole.n || pole.is_spoke_end(v))
            fail("vertex " + std::to_string(v) + " cannot lie on an alternating circuit");
    return report;
}

} // namespace pm4cover
