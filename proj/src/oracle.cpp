#include "pm4cover/oracle.hpp"

#include <algorithm>
#include <tuple>

namespace pm4cover {

OracleCaps& oracle_caps() {
    static OracleCaps caps;
    return caps;
}

namespace {

void check_cap(int vertices, int cap, const char* what) {
    if (vertices > cap)
        throw Error(Err::SizeCap, std::string(what) + ": " + std::to_string(vertices) +
                                      " vertices exceeds cap " + std::to_string(cap));
}

// spokes sort before chords before circuit edges
std::tuple<int, int, int> edge_key(const EdgeRef& e) {
    int rank = e.kind == EdgeKind::Spoke ? 0 : e.kind == EdgeKind::Chord ? 1 : 2;
    return {rank, e.a, e.b};
}

struct PoleEdges {
    std::vector<EdgeRef> edges;
    std::vector<std::vector<int>> incident;  // per vertex

    explicit PoleEdges(const ThreePole& pole) {
        incident.resize(pole.n);
        auto add = [&](EdgeRef e, std::initializer_list<int> ends) {
            int idx = static_cast<int>(edges.size());
            edges.push_back(e);
            for (int v : ends) incident[v].push_back(idx);
        };
        for (int k = 0; k < 3; k++) add(EdgeRef::spoke(pole.spokes[k]), {pole.spokes[k]});
        for (auto [u, v] : pole.chords) add(EdgeRef::chord(u, v), {u, v});
        for (int i = 0; i < pole.n; i++)
            add(EdgeRef::h(i, pole.n), {i, pole.h_next(i)});
    }
};

} // namespace

std::vector<std::vector<EdgeRef>> enumerate_perfect_matchings(const ThreePole& pole) {
    check_cap(pole.n, oracle_caps().matching_vertices, "perfect matching enumeration");
    PoleEdges pe(pole);
    std::vector<char> covered(pole.n, 0);
    std::vector<EdgeRef> current;
    std::vector<std::vector<EdgeRef>> out;

    auto rec = [&](auto&& self) -> void {
        int v = 0;
        while (v < pole.n && covered[v]) v++;
        if (v == pole.n) {
            out.push_back(current);
            return;
        }
        for (int idx : pe.incident[v]) {
            const EdgeRef& e = pe.edges[idx];
            int other = -1;
            if (e.kind != EdgeKind::Spoke) other = e.a == v ? e.b : e.a;
            if (other >= 0 && covered[other]) continue;
            covered[v] = 1;
            if (other >= 0) covered[other] = 1;
            current.push_back(e);
            self(self);
            current.pop_back();
            covered[v] = 0;
            if (other >= 0) covered[other] = 0;
        }
    };
    rec(rec);

    for (auto& m : out)
        std::sort(m.begin(), m.end(),
                  [](const EdgeRef& a, const EdgeRef& b) { return edge_key(a) < edge_key(b); });
    std::sort(out.begin(), out.end(),
              [](const std::vector<EdgeRef>& a, const std::vector<EdgeRef>& b) {
                  return std::lexicographical_compare(
                      a.begin(), a.end(), b.begin(), b.end(),
                      [](const EdgeRef& x, const EdgeRef& y) { return edge_key(x) < edge_key(y); });
              });
    return out;
}

std::vector<std::vector<int>> enumerate_perfect_matchings(const CubicGraph& g) {
    check_cap(g.n, oracle_caps().matching_vertices, "perfect matching enumeration");
    auto adj = g.adjacency();
    std::vector<char> covered(g.n, 0);
    std::vector<int> current;
    std::vector<std::vector<int>> out;

    auto rec = [&](auto&& self) -> void {
        int v = 0;
        while (v < g.n && covered[v]) v++;
        if (v == g.n) {
            out.push_back(current);
            return;
        }
        for (auto [e, w] : adj[v]) {
            if (w == v || covered[w]) continue;  // loops never match
            covered[v] = covered[w] = 1;
            current.push_back(e);
            self(self);
            current.pop_back();
            covered[v] = covered[w] = 0;
        }
    };
    rec(rec);

    for (auto& m : out) std::sort(m.begin(), m.end());
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<ProperCover> brute_force_proper_cover(const ThreePole& pole) {
    check_cap(pole.n, oracle_caps().cover_vertices, "proper cover search");

    // Candidate label sets: circuit edges take one or two of {1,2,3}; chords
    // take 4 plus at most one of {1,2,3}; spoke k is fixed apart from its
    // simple partner.
    static const LabelSet h_options[] = {label(1), label(2), label(3),
                                         labels(1, 2), labels(1, 3), labels(2, 3)};
    static const LabelSet chord_options[] = {label(4), labels(1, 4), labels(2, 4), labels(3, 4)};
    static const LabelSet spoke_options[] = {labels(1, 4), labels(2, 4), labels(3, 4)};

    // Order: spokes, chords, circuit edges (matches the enumeration encoding).
    struct Slot {
        enum class Kind { Spoke, Chord, H } kind;
        int index;
        int ends[2];
    };
    std::vector<Slot> slots;
    for (int k = 0; k < 3; k++)
        slots.push_back({Slot::Kind::Spoke, k, {pole.spokes[k], -1}});
    for (int j = 0; j < static_cast<int>(pole.chords.size()); j++)
        slots.push_back({Slot::Kind::Chord, j, {pole.chords[j].first, pole.chords[j].second}});
    for (int i = 0; i < pole.n; i++)
        slots.push_back({Slot::Kind::H, i, {i, pole.h_next(i)}});

    std::vector<int> remaining(pole.n, 3);     // unassigned incident edges
    std::vector<LabelSet> used(pole.n, 0);     // labels already present at vertex

    auto unplace = [&](const Slot& s, LabelSet ls, int placed_ends) {
        for (int i = 0; i < placed_ends; i++) {
            int v = s.ends[i];
            if (v < 0) continue;
            used[v] = static_cast<LabelSet>(used[v] & ~ls);
            remaining[v]++;
        }
    };
    // place() may fail after mutating one endpoint; redo it transactionally
    auto try_place = [&](const Slot& s, LabelSet ls) -> bool {
        for (int v : s.ends)
            if (v >= 0 && (used[v] & ls)) return false;
        int done = 0;
        for (int v : s.ends) {
            if (v < 0) break;
            used[v] = static_cast<LabelSet>(used[v] | ls);
            remaining[v]--;
            done++;
            if (remaining[v] == 0 && used[v] != 0b1111) {
                unplace(s, ls, done);
                return false;
            }
        }
        return true;
    };

    ProperCover cover;
    cover.h.assign(pole.n, 0);
    cover.chord.assign(pole.chords.size(), 0);

    auto rec = [&](size_t at, auto&& self) -> bool {
        if (at == slots.size()) return true;
        const Slot& s = slots[at];
        auto candidates = s.kind == Slot::Kind::Spoke
                              ? std::pair(spoke_options, 3)
                              : s.kind == Slot::Kind::Chord ? std::pair(chord_options, 4)
                                                            : std::pair(h_options, 6);
        for (int c = 0; c < candidates.second; c++) {
            LabelSet ls = candidates.first[c];
            if (!try_place(s, ls)) continue;
            switch (s.kind) {
                case Slot::Kind::Spoke: cover.spoke[s.index] = ls; break;
                case Slot::Kind::Chord: cover.chord[s.index] = ls; break;
                case Slot::Kind::H: cover.h[s.index] = ls; break;
            }
            if (self(at + 1, self)) return true;
            int placed = s.ends[1] < 0 ? 1 : 2;
            unplace(s, ls, placed);
        }
        return false;
    };
    if (!rec(0, rec)) return std::nullopt;
    return cover;
}

KCoverResult covers_with_k_matchings(const CubicGraph& g, int k) {
    check_cap(g.n, oracle_caps().matching_vertices, "k-matching cover");
    if (k < 0 || k > 5) throw Error(Err::SizeCap, "k must be between 0 and 5");
    auto matchings = enumerate_perfect_matchings(g);
    int m = static_cast<int>(g.edges.size());

    std::vector<std::vector<char>> in_matching(matchings.size(), std::vector<char>(m, 0));
    std::vector<std::vector<int>> containing(m);
    for (size_t i = 0; i < matchings.size(); i++)
        for (int e : matchings[i]) {
            in_matching[i][e] = 1;
            containing[e].push_back(static_cast<int>(i));
        }
    for (int e = 0; e < m; e++)
        if (containing[e].empty()) return {false, {}};  // bridge-like edge: never coverable

    std::vector<char> covered(m, 0);
    std::vector<int> chosen;
    KCoverResult result;

    auto rec = [&](int depth, auto&& self) -> bool {
        int pick = -1, best = static_cast<int>(matchings.size()) + 1;
        for (int e = 0; e < m; e++)
            if (!covered[e] && static_cast<int>(containing[e].size()) < best) {
                best = static_cast<int>(containing[e].size());
                pick = e;
            }
        if (pick == -1) return true;
        if (depth == k) return false;
        for (int mi : containing[pick]) {
            std::vector<int> newly;
            for (int e : matchings[mi])
                if (!covered[e]) {
                    covered[e] = 1;
                    newly.push_back(e);
                }
            chosen.push_back(mi);
            if (self(depth + 1, self)) return true;
            chosen.pop_back();
            for (int e : newly) covered[e] = 0;
        }
        return false;
    };
    if (rec(0, rec)) {
        result.coverable = true;
        for (int mi : chosen) result.witness.push_back(matchings[mi]);
    }
    return result;
}

namespace {

// DFS over alternating walks anchored at their minimum vertex, leaving it by
// its chord. `collect_all` gathers canonical forms; otherwise stops at the
// first circuit found.
void alternating_circuit_search(const ThreePole& pole, bool collect_all,
                                std::vector<AlternatingCircuit>& out) {
    std::vector<char> on_walk(pole.n, 0);
    std::vector<int> vseq;
    std::vector<EdgeRef> eseq;

    auto emit = [&]() {
        AlternatingCircuit c;
        c.vertices = vseq;
        c.edges = eseq;
        out.push_back(c.canonical());
    };

    // last edge was a chord: try to close via a circuit edge, then extend
    auto step = [&](int start, int cur, auto&& self) -> bool {
        for (int next : {pole.h_next(cur), pole.h_prev(cur)}) {
            int h_index = next == pole.h_next(cur) ? cur : next;
            if (next == start && vseq.size() >= 2) {
                eseq.push_back(EdgeRef::h(h_index, pole.n));
                emit();
                eseq.pop_back();
                if (!collect_all) return true;
            }
            if (on_walk[next] || next < start || pole.is_spoke_end(next)) continue;
            int partner = pole.partner[next];
            if (partner < start || on_walk[partner] || pole.is_spoke_end(partner)) continue;
            // take circuit edge then the forced chord
            on_walk[next] = on_walk[partner] = 1;
            vseq.push_back(next);
            vseq.push_back(partner);
            eseq.push_back(EdgeRef::h(h_index, pole.n));
            eseq.push_back(EdgeRef::chord(next, partner));
            bool done = self(start, partner, self);
            eseq.pop_back();
            eseq.pop_back();
            vseq.pop_back();
            vseq.pop_back();
            on_walk[next] = on_walk[partner] = 0;
            if (done) return true;
        }
        return false;
    };

    for (int s = 0; s < pole.n; s++) {
        if (pole.is_spoke_end(s)) continue;
        int t = pole.partner[s];
        if (t < s) continue;  // anchor at the chord's lower end
        on_walk[s] = on_walk[t] = 1;
        vseq = {s, t};
        eseq = {EdgeRef::chord(s, t)};
        bool done = step(s, t, step);
        on_walk[s] = on_walk[t] = 0;
        if (done && !collect_all) return;
    }
}

} // namespace

std::vector<AlternatingCircuit> brute_alternating_circuits(const ThreePole& pole) {
    check_cap(pole.n, oracle_caps().circuit_vertices, "alternating circuit enumeration");
    std::vector<AlternatingCircuit> out;
    alternating_circuit_search(pole, true, out);
    std::sort(out.begin(), out.end(), [](const AlternatingCircuit& a, const AlternatingCircuit& b) {
        return a.vertices.size() != b.vertices.size() ? a.vertices.size() < b.vertices.size()
                                                      : a.vertices < b.vertices;
    });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::optional<AlternatingCircuit> find_any_alternating_circuit(const ThreePole& pole) {
    std::vector<AlternatingCircuit> out;
    alternating_circuit_search(pole, false, out);
    if (out.empty()) return std::nullopt;
    return out.front();
}

SmallMultiGraph to_multigraph(const CubicGraph& g) {
    SmallMultiGraph mg;
    mg.vertex_count = g.n;
    mg.edges = g.edges;
    return mg;
}

std::optional<EdgeColouring> is_three_edge_colourable(const SmallMultiGraph& g) {
    return backtrack_colouring(g);
}

std::optional<EdgeColouring> is_three_edge_colourable(const CubicGraph& g) {
    return backtrack_colouring(to_multigraph(g));
}

bool independent_cover_check(const ThreePole& pole, const ProperCover& cover) {
    if (static_cast<int>(cover.h.size()) != pole.n || cover.chord.size() != pole.chords.size())
        return false;
    // matchings 1..4 as explicit edge sets, then check each spans the pole
    for (int i = 1; i <= 4; i++) {
        std::vector<int> hits(pole.n, 0);
        for (int e = 0; e < pole.n; e++)
            if (has_label(cover.h[e], i)) {
                hits[e]++;
                hits[pole.h_next(e)]++;
            }
        for (size_t j = 0; j < pole.chords.size(); j++)
            if (has_label(cover.chord[j], i)) {
                hits[pole.chords[j].first]++;
                hits[pole.chords[j].second]++;
            }
        for (int k = 0; k < 3; k++)
            if (has_label(cover.spoke[k], i)) hits[pole.spokes[k]]++;
        for (int v = 0; v < pole.n; v++)
            if (hits[v] != 1) return false;
    }
    // coverage
    for (int e = 0; e < pole.n; e++)
        if (cover.h[e] == 0) return false;
    // matching 4 is exactly the chord set plus the spokes
    for (int e = 0; e < pole.n; e++)
        if (has_label(cover.h[e], 4)) return false;
    for (LabelSet c : cover.chord)
        if (!has_label(c, 4)) return false;
    LabelSet partners = 0;
    for (LabelSet s : cover.spoke) {
        if (!has_label(s, 4) || label_count(s) != 2) return false;
        partners |= static_cast<LabelSet>(s & ~label(4));
    }
    return partners == 0b0111;
}

} // namespace pm4cover
