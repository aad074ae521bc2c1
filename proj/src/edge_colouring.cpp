#include "pm4cover/edge_colouring.hpp"

#include <algorithm>
#include <bit>

namespace pm4cover {

std::vector<std::vector<std::pair<int, int>>> SmallMultiGraph::adjacency() const {
    std::vector<std::vector<std::pair<int, int>>> adj(vertex_count);
    for (int e = 0; e < static_cast<int>(edges.size()); e++) {
        auto [u, v] = edges[e];
        adj[u].emplace_back(e, v);
        adj[v].emplace_back(e, u);
    }
    return adj;
}

std::vector<std::string> colouring_violations(const SmallMultiGraph& g, const EdgeColouring& c) {
    std::vector<std::string> out;
    if (c.size() != g.edges.size()) {
        out.push_back("colouring size does not match edge count");
        return out;
    }
    for (size_t e = 0; e < c.size(); e++)
        if (c[e] < 1 || c[e] > 3)
            out.push_back("edge " + std::to_string(e) + " has colour " + std::to_string(c[e]));
    auto adj = g.adjacency();
    for (int v = 0; v < g.vertex_count; v++)
        for (size_t i = 0; i < adj[v].size(); i++)
            for (size_t j = i + 1; j < adj[v].size(); j++) {
                int e = adj[v][i].first, f = adj[v][j].first;
                if (c[e] >= 1 && c[e] == c[f])
                    out.push_back("edges " + std::to_string(e) + "," + std::to_string(f) +
                                  " share colour " + std::to_string(c[e]) + " at vertex " +
                                  std::to_string(v));
            }
    return out;
}

std::optional<EdgeColouring> backtrack_colouring(const SmallMultiGraph& g,
                                                 const std::vector<ColourConstraint>& constraints) {
    int m = static_cast<int>(g.edges.size());
    std::vector<std::uint8_t> allowed(m, 0b111);
    for (const auto& c : constraints) {
        if (c.edge < 0 || c.edge >= m) throw Error(Err::Reference, "constraint on unknown edge");
        allowed[c.edge] &= c.allowed;
    }

    // neighbours[e] = edges sharing an endpoint with e
    auto adj = g.adjacency();
    std::vector<std::vector<int>> neighbours(m);
    for (int v = 0; v < g.vertex_count; v++)
        for (size_t i = 0; i < adj[v].size(); i++)
            for (size_t j = 0; j < adj[v].size(); j++)
                if (i != j) neighbours[adj[v][i].first].push_back(adj[v][j].first);
    for (auto& ns : neighbours) {
        std::sort(ns.begin(), ns.end());
        ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
    }

    std::vector<int> colour(m, 0);
    struct Change { int edge; std::uint8_t prev; };
    std::vector<Change> trail;

    // Assign `e` = `col`, strike col from neighbours, follow forced moves.
    // Returns false on contradiction; trail allows rollback.
    auto assign = [&](int e, int col, auto&& self) -> bool {
        colour[e] = col;
        for (int f : neighbours[e]) {
            if (colour[f] != 0) {
                if (colour[f] == col) return false;
                continue;
            }
            std::uint8_t before = allowed[f];
            std::uint8_t after = before & static_cast<std::uint8_t>(~(1u << (col - 1)));
            if (after == before) continue;
            trail.push_back({f, before});
            allowed[f] = after;
            if (after == 0) return false;
        }
        for (int f : neighbours[e])
            if (colour[f] == 0 && std::popcount(static_cast<unsigned>(allowed[f])) == 1) {
                int forced = std::countr_zero(static_cast<unsigned>(allowed[f])) + 1;
                if (!self(f, forced, self)) return false;
            }
        return true;
    };

    auto solve = [&](auto&& self) -> bool {
        int pick = -1, best = 4;
        for (int e = 0; e < m; e++)
            if (colour[e] == 0) {
                int options = std::popcount(static_cast<unsigned>(allowed[e]));
                if (options < best) {
                    best = options;
                    pick = e;
                    if (best <= 1) break;
                }
            }
        if (pick == -1) return true;
        std::uint8_t options = allowed[pick];
        for (int col = 1; col <= 3; col++) {
            if (!(options & (1u << (col - 1)))) continue;
            size_t mark = trail.size();
            std::vector<int> colour_before = colour;
            if (assign(pick, col, assign) && self(self)) return true;
            colour = std::move(colour_before);
            while (trail.size() > mark) {
                allowed[trail.back().edge] = trail.back().prev;
                trail.pop_back();
            }
        }
        return false;
    };

    if (!solve(solve)) return std::nullopt;
    return EdgeColouring(colour.begin(), colour.end());
}

ApexClosure build_apex_closure(const ThreePole& pole) {
    SegmentProfile prof = segment_profile(pole);
    if (!prof.two_even() || prof.seg[0].length != 2)
        throw Error(Err::WrongProfile, "first even role must have length 2");

    ApexClosure c;
    c.n_pole = pole.n;
    c.apex = pole.n;
    c.v1 = prof.seg[0].from_pos;
    c.v3 = prof.seg[0].to_pos;
    c.mid = prof.seg[0].inner.front();
    c.v2 = pole.spokes[prof.role[1]];
    c.mid_partner = pole.partner[c.mid];
    c.v1_outer = pole.h_next(c.v1) == c.mid ? pole.h_prev(c.v1) : pole.h_next(c.v1);
    c.v3_outer = pole.h_next(c.v3) == c.mid ? pole.h_prev(c.v3) : pole.h_next(c.v3);

    c.graph.vertex_count = pole.n + 1;
    c.h_edge.resize(pole.n);
    for (int i = 0; i < pole.n; i++) {
        c.h_edge[i] = static_cast<int>(c.graph.edges.size());
        c.graph.edges.emplace_back(i, pole.h_next(i));
    }
    c.chord_edge.resize(pole.chords.size());
    for (size_t j = 0; j < pole.chords.size(); j++) {
        c.chord_edge[j] = static_cast<int>(c.graph.edges.size());
        c.graph.edges.push_back(pole.chords[j]);
    }
    for (int k = 0; k < 3; k++) {
        c.spoke_edge[k] = static_cast<int>(c.graph.edges.size());
        c.graph.edges.emplace_back(pole.spokes[k], c.apex);
    }
    return c;
}

QuadReduction build_quad_reduction(const ApexClosure& closure) {
    const SmallMultiGraph& g = closure.graph;
    std::vector<char> removed(g.vertex_count, 0);
    for (int v : {closure.v1, closure.mid, closure.v3, closure.apex}) removed[v] = 1;

    QuadReduction r;
    r.closure_to_b.assign(g.vertex_count, -1);
    for (int v = 0; v < g.vertex_count; v++)
        if (!removed[v]) {
            r.closure_to_b[v] = static_cast<int>(r.b_to_closure_vertex.size());
            r.b_to_closure_vertex.push_back(v);
        }
    if (r.b_to_closure_vertex.size() < 2)
        throw Error(Err::DegenerateReduction, "fewer than 2 vertices would remain");

    r.b.vertex_count = static_cast<int>(r.b_to_closure_vertex.size());
    for (int e = 0; e < static_cast<int>(g.edges.size()); e++) {
        auto [u, v] = g.edges[e];
        if (removed[u] || removed[v]) continue;
        r.b_edge_to_closure.push_back(e);
        r.b.edges.emplace_back(r.closure_to_b[u], r.closure_to_b[v]);
    }
    r.bridge_outer = static_cast<int>(r.b.edges.size());
    r.b.edges.emplace_back(r.closure_to_b[closure.v1_outer], r.closure_to_b[closure.v3_outer]);
    r.b_edge_to_closure.push_back(-1);
    r.bridge_mid = static_cast<int>(r.b.edges.size());
    r.b.edges.emplace_back(r.closure_to_b[closure.mid_partner], r.closure_to_b[closure.v2]);
    r.b_edge_to_closure.push_back(-1);

    // Designated circuit: the surviving circuit path from v3_outer around to
    // v1_outer, closed by the outer bridge. Walk pole positions away from v3.
    int n = closure.n_pole;
    int dir = (closure.v3_outer == (closure.v3 + 1) % n) ? 1 : -1;
    int pos = closure.v3_outer;
    while (pos != closure.v1_outer) {
        int next = (pos + dir + n) % n;
        int h_index = dir == 1 ? pos : next;
        int closure_edge = closure.h_edge[h_index];
        // locate it in b
        for (int e = 0; e < static_cast<int>(r.b_edge_to_closure.size()); e++)
            if (r.b_edge_to_closure[e] == closure_edge) {
                r.b.circuit_edges.push_back(e);
                break;
            }
        pos = next;
    }
    r.b.circuit_edges.push_back(r.bridge_outer);
    internal_check(static_cast<int>(r.b.circuit_edges.size()) == r.b.vertex_count,
                   "reduction circuit spans every vertex");
    return r;
}

namespace {

// Vertex sequence of a cyclic edge list; seq[i] is the endpoint shared by
// edges i-1 and i.
std::vector<int> circuit_vertex_sequence(const SmallMultiGraph& g) {
    const auto& ce = g.circuit_edges;
    size_t m = ce.size();
    std::vector<int> seq(m);
    if (m == 2) {
        // two parallel edges
        auto [u, v] = g.edges[ce[0]];
        seq = {u, v};
        return seq;
    }
    for (size_t i = 0; i < m; i++) {
        auto [a, b] = g.edges[ce[(i + m - 1) % m]];
        auto [c, d] = g.edges[ce[i]];
        seq[i] = (a == c || a == d) ? a : b;
        internal_check(seq[i] == c || seq[i] == d, "consecutive circuit edges share a vertex");
    }
    return seq;
}

} // namespace

EdgeColouring hamiltonian_colouring(const SmallMultiGraph& g) {
    if (g.circuit_edges.empty())
        throw Error(Err::InvalidCircuit, "no designated circuit");
    if (g.circuit_edges.size() % 2 != 0)
        throw Error(Err::OddCircuit, "designated circuit has odd length");

    std::vector<int> seq = circuit_vertex_sequence(g);
    size_t m = seq.size();
    size_t start = 0;
    for (size_t i = 1; i < m; i++)
        if (seq[i] < seq[start]) start = i;

    EdgeColouring colouring(g.edges.size(), 3);
    for (size_t i = 0; i < m; i++)
        colouring[g.circuit_edges[(start + i) % m]] = (i % 2 == 0) ? 1 : 2;
    return colouring;
}

namespace {

// Connected component of edges coloured with the two colours of `pair_mask`
// that contains `seed`.
std::vector<int> kempe_chain(const SmallMultiGraph& g, const EdgeColouring& c, int seed,
                             int col_a, int col_b) {
    auto adj = g.adjacency();
    std::vector<char> in_chain(g.edges.size(), 0);
    std::vector<int> stack{seed}, chain;
    in_chain[seed] = 1;
    while (!stack.empty()) {
        int e = stack.back();
        stack.pop_back();
        chain.push_back(e);
        for (int v : {g.edges[e].first, g.edges[e].second})
            for (auto [f, w] : adj[v])
                if (!in_chain[f] && (c[f] == col_a || c[f] == col_b)) {
                    in_chain[f] = 1;
                    stack.push_back(f);
                }
    }
    return chain;
}

void swap_chain(EdgeColouring& c, const std::vector<int>& chain, int col_a, int col_b) {
    for (int e : chain) c[e] = (c[e] == col_a) ? col_b : col_a;
}

} // namespace

std::optional<EdgeColouring> kempe_equalize(const SmallMultiGraph& g, EdgeColouring colouring,
                                            int f1, int f2, int budget) {
    for (int step = 0; step < budget; step++) {
        int a = colouring[f1], b = colouring[f2];
        if (a == b) return colouring;
        std::vector<int> chain = kempe_chain(g, colouring, f2, a, b);
        if (std::find(chain.begin(), chain.end(), f1) == chain.end()) {
            swap_chain(colouring, chain, a, b);
            return colouring;
        }
        // f1 sits on the same chain; flip it out of the way with the third colour.
        int c = 6 - a - b;
        std::vector<int> chain2 = kempe_chain(g, colouring, f1, a, c);
        swap_chain(colouring, chain2, a, c);
    }
    return std::nullopt;
}

EdgeColouring lift_through_4cycle(const ApexClosure& closure, const QuadReduction& reduction,
                                  const EdgeColouring& b_colouring) {
    int alpha = b_colouring[reduction.bridge_outer];
    if (alpha != b_colouring[reduction.bridge_mid])
        throw Error(Err::UnequalBoundary, "bridge edges carry different colours");

    EdgeColouring out(closure.graph.edges.size(), 0);
    for (size_t e = 0; e < reduction.b.edges.size(); e++)
        if (reduction.b_edge_to_closure[e] >= 0)
            out[reduction.b_edge_to_closure[e]] = b_colouring[e];

    int n = closure.n_pole;
    auto h_between = [&](int u, int v) {
        return closure.h_edge[(u + 1) % n == v ? u : v];
    };
    // pendants inherit the bridge colour
    out[h_between(closure.v1, closure.v1_outer)] = alpha;
    out[h_between(closure.v3, closure.v3_outer)] = alpha;
    int mid_chord = -1;
    for (size_t j = 0; j < closure.chord_edge.size(); j++) {
        auto [u, v] = closure.graph.edges[closure.chord_edge[j]];
        if (u == closure.mid || v == closure.mid) mid_chord = closure.chord_edge[j];
    }
    internal_check(mid_chord >= 0, "mid vertex has a chord");
    out[mid_chord] = alpha;
    for (int k = 0; k < 3; k++) {
        auto [u, v] = closure.graph.edges[closure.spoke_edge[k]];
        if (u == closure.v2 || v == closure.v2) out[closure.spoke_edge[k]] = alpha;
    }
    // quadrilateral alternates the two remaining colours, lower one on (v1,mid)
    int beta = alpha == 1 ? 2 : 1;
    int gamma = 6 - alpha - beta;
    out[h_between(closure.v1, closure.mid)] = beta;
    out[h_between(closure.mid, closure.v3)] = gamma;
    for (int k = 0; k < 3; k++) {
        auto [u, v] = closure.graph.edges[closure.spoke_edge[k]];
        int end = u == closure.apex ? v : u;
        if (end == closure.v3) out[closure.spoke_edge[k]] = beta;
        if (end == closure.v1) out[closure.spoke_edge[k]] = gamma;
    }
    internal_check(colouring_violations(closure.graph, out).empty(),
                   "lifted colouring is proper");
    return out;
}

ProperCover colouring_to_cover(const ThreePole& pole, const ApexClosure& closure,
                               const EdgeColouring& colouring) {
    internal_check(colouring_violations(closure.graph, colouring).empty(),
                   "closure colouring is proper");
    // spoke edges meet at the apex, so their colours are pairwise distinct
    std::array<int, 4> perm{};  // perm[colour] = matching index
    for (int k = 0; k < 3; k++) {
        int col = colouring[closure.spoke_edge[k]];
        internal_check(perm[col] == 0, "spoke classes are distinct");
        perm[col] = k + 1;
    }

    ProperCover cover;
    cover.h.assign(pole.n, 0);
    cover.chord.assign(pole.chords.size(), 0);
    for (int i = 0; i < pole.n; i++)
        cover.h[i] = label(perm[colouring[closure.h_edge[i]]]);
    for (size_t j = 0; j < pole.chords.size(); j++)
        cover.chord[j] =
            static_cast<LabelSet>(label(perm[colouring[closure.chord_edge[j]]]) | label(4));
    for (int k = 0; k < 3; k++) cover.spoke[k] = labels(k + 1, 4);
    return cover;
}

} // namespace pm4cover
