#include "pm4cover/graph_level.hpp"

#include <algorithm>

#include "pm4cover/oracle.hpp"

namespace pm4cover {

CubicGraph CubicGraph::create(int n, std::vector<std::pair<int, int>> edges) {
    CubicGraph g;
    g.n = n;
    g.edges = std::move(edges);
    std::vector<int> degree(n, 0);
    for (auto [u, v] : g.edges) {
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw Error(Err::Degree, "edge endpoint out of range");
        degree[u]++;
        degree[v]++;
    }
    for (int v = 0; v < n; v++)
        if (degree[v] != 3)
            throw Error(Err::Degree, "vertex " + std::to_string(v) + " has degree " +
                                         std::to_string(degree[v]) + ", want 3");
    return g;
}

std::vector<std::vector<std::pair<int, int>>> CubicGraph::adjacency() const {
    std::vector<std::vector<std::pair<int, int>>> adj(n);
    for (int e = 0; e < static_cast<int>(edges.size()); e++) {
        adj[edges[e].first].emplace_back(e, edges[e].second);
        adj[edges[e].second].emplace_back(e, edges[e].first);
    }
    return adj;
}

namespace {

// circuits of the complement of a perfect matching, as vertex cycles
std::vector<std::vector<int>> two_factor_circuits(const CubicGraph& g,
                                                  const std::vector<int>& matching) {
    std::vector<char> in_matching(g.edges.size(), 0);
    for (int e : matching) in_matching[e] = 1;
    auto adj = g.adjacency();

    std::vector<char> visited(g.n, 0);
    std::vector<std::vector<int>> circuits;
    for (int s = 0; s < g.n; s++) {
        if (visited[s]) continue;
        std::vector<int> cycle;
        int cur = s, prev_edge = -1;
        while (true) {
            cycle.push_back(cur);
            visited[cur] = 1;
            int next = -1, via = -1;
            for (auto [e, w] : adj[cur])
                if (!in_matching[e] && e != prev_edge) {
                    next = w;
                    via = e;
                    break;
                }
            internal_check(via >= 0, "two-factor walk continues");
            if (next == s) break;
            prev_edge = via;
            cur = next;
        }
        circuits.push_back(std::move(cycle));
    }
    return circuits;
}

} // namespace

TwoFactorSplit split_from_circuits(const CubicGraph& g, const std::vector<int>& circuit1,
                                   const std::vector<int>& circuit2) {
    TwoFactorSplit split;
    split.circuit1 = circuit1;
    split.circuit2 = circuit2;
    if ((circuit1.size() + circuit2.size()) != static_cast<size_t>(g.n))
        throw Error(Err::Validation, "circuits must partition the vertex set");
    if (circuit1.size() % 2 == 0 || circuit2.size() % 2 == 0)
        throw Error(Err::Validation, "both circuits must be odd");

    split.g_to_p1.assign(g.n, -1);
    split.g_to_p2.assign(g.n, -1);
    for (size_t i = 0; i < circuit1.size(); i++) split.g_to_p1[circuit1[i]] = static_cast<int>(i);
    for (size_t i = 0; i < circuit2.size(); i++) split.g_to_p2[circuit2[i]] = static_cast<int>(i);

    int n1 = static_cast<int>(circuit1.size());
    int n2 = static_cast<int>(circuit2.size());
    split.h1_to_g.assign(n1, -1);
    split.h2_to_g.assign(n2, -1);

    // classify edges; circuit edges indexed by pole position
    std::vector<int> cross_edges;
    std::vector<std::pair<int, int>> chords1, chords2;
    std::vector<int> chord_edge1, chord_edge2;
    for (int e = 0; e < static_cast<int>(g.edges.size()); e++) {
        auto [u, v] = g.edges[e];
        int p1u = split.g_to_p1[u], p1v = split.g_to_p1[v];
        int p2u = split.g_to_p2[u], p2v = split.g_to_p2[v];
        if (p1u >= 0 && p1v >= 0) {
            if ((p1u + 1) % n1 == p1v && split.h1_to_g[p1u] < 0)
                split.h1_to_g[p1u] = e;
            else if ((p1v + 1) % n1 == p1u && split.h1_to_g[p1v] < 0)
                split.h1_to_g[p1v] = e;
            else {
                chords1.emplace_back(std::min(p1u, p1v), std::max(p1u, p1v));
                chord_edge1.push_back(e);
            }
        } else if (p2u >= 0 && p2v >= 0) {
            if ((p2u + 1) % n2 == p2v && split.h2_to_g[p2u] < 0)
                split.h2_to_g[p2u] = e;
            else if ((p2v + 1) % n2 == p2u && split.h2_to_g[p2v] < 0)
                split.h2_to_g[p2v] = e;
            else {
                chords2.emplace_back(std::min(p2u, p2v), std::max(p2u, p2v));
                chord_edge2.push_back(e);
            }
        } else {
            cross_edges.push_back(e);
        }
    }
    for (int i = 0; i < n1; i++)
        if (split.h1_to_g[i] < 0)
            throw Error(Err::Validation, "first circuit is not a closed walk in the graph");
    for (int i = 0; i < n2; i++)
        if (split.h2_to_g[i] < 0)
            throw Error(Err::Validation, "second circuit is not a closed walk in the graph");
    if (cross_edges.size() != 3)
        throw Error(Err::Validation, "need exactly three edges between the circuits, got " +
                                         std::to_string(cross_edges.size()));

    // spokes ordered by pole1 position
    std::sort(cross_edges.begin(), cross_edges.end(), [&](int a, int b) {
        auto pos1 = [&](int e) {
            auto [u, v] = g.edges[e];
            return split.g_to_p1[u] >= 0 ? split.g_to_p1[u] : split.g_to_p1[v];
        };
        return pos1(a) < pos1(b);
    });
    std::array<int, 3> spokes1{}, spokes2_raw{};
    for (int k = 0; k < 3; k++) {
        auto [u, v] = g.edges[cross_edges[k]];
        int s1 = split.g_to_p1[u] >= 0 ? split.g_to_p1[u] : split.g_to_p1[v];
        int s2 = split.g_to_p2[u] >= 0 ? split.g_to_p2[u] : split.g_to_p2[v];
        spokes1[k] = s1;
        spokes2_raw[k] = s2;
        split.spoke_edges[k] = cross_edges[k];
    }
    // pole2 spokes ascending; pairing maps pole1 spoke k to pole2's index
    std::array<int, 3> order{0, 1, 2};
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return spokes2_raw[a] < spokes2_raw[b]; });
    std::array<int, 3> spokes2{};
    for (int k = 0; k < 3; k++) spokes2[k] = spokes2_raw[order[k]];
    for (int k = 0; k < 3; k++)
        split.pairing[k] = static_cast<int>(std::find(order.begin(), order.end(), k) -
                                            order.begin());

    split.pole1 = validate_pole(n1, spokes1, chords1);
    split.pole2 = validate_pole(n2, spokes2, chords2);
    split.c1_to_g.assign(split.pole1.chords.size(), -1);
    split.c2_to_g.assign(split.pole2.chords.size(), -1);
    for (size_t j = 0; j < chords1.size(); j++) {
        int idx = split.pole1.chord_index(chords1[j].first, chords1[j].second);
        split.c1_to_g[idx] = chord_edge1[j];
    }
    for (size_t j = 0; j < chords2.size(); j++) {
        int idx = split.pole2.chord_index(chords2[j].first, chords2[j].second);
        split.c2_to_g[idx] = chord_edge2[j];
    }
    split.chord_edges1 = chord_edge1;
    split.chord_edges2 = chord_edge2;
    return split;
}

std::optional<TwoFactorSplit> find_two_odd_circuit_factor(const CubicGraph& g) {
    auto matchings = enumerate_perfect_matchings(g);  // SizeCap applies
    for (const auto& matching : matchings) {
        auto circuits = two_factor_circuits(g, matching);
        if (circuits.size() != 2) continue;
        if (circuits[0].size() % 2 == 0 || circuits[1].size() % 2 == 0) continue;
        int cross = 0;
        std::vector<char> side(g.n, 0);
        for (int v : circuits[1]) side[v] = 1;
        for (int e : matching) {
            auto [u, v] = g.edges[e];
            if (side[u] != side[v]) cross++;
        }
        if (cross != 3) continue;

        // canonical traversal: start at the lowest vertex, towards its
        // smaller two-factor neighbour; first circuit is the one holding
        // vertex 0's side ordered by minimum vertex
        auto canonical_cycle = [&](std::vector<int> cycle) {
            std::vector<char> in_matching(g.edges.size(), 0);
            for (int e : matching) in_matching[e] = 1;
            auto adj = g.adjacency();
            int start = *std::min_element(cycle.begin(), cycle.end());
            std::vector<int> nbrs;
            for (auto [e, w] : adj[start])
                if (!in_matching[e]) nbrs.push_back(w);
            std::sort(nbrs.begin(), nbrs.end());
            std::vector<int> out{start};
            int prev = start, cur = nbrs.front();
            while (cur != start) {
                out.push_back(cur);
                for (auto [e, w] : adj[cur])
                    if (!in_matching[e] && w != prev) {
                        // avoid bouncing back over a parallel edge pair
                        prev = cur;
                        cur = w;
                        break;
                    }
            }
            return out;
        };
        std::vector<int> c1 = canonical_cycle(circuits[0]);
        std::vector<int> c2 = canonical_cycle(circuits[1]);
        if (*std::min_element(c2.begin(), c2.end()) < *std::min_element(c1.begin(), c1.end()))
            std::swap(c1, c2);
        return split_from_circuits(g, c1, c2);
    }
    return std::nullopt;
}

std::pair<CubicGraph, TwoFactorSplit> compose_two_circuit_graph(const ThreePole& pole1,
                                                                const ThreePole& pole2,
                                                                const std::array<int, 3>& pairing) {
    {
        std::array<int, 3> check = pairing;
        std::sort(check.begin(), check.end());
        if (check != std::array<int, 3>{0, 1, 2})
            throw Error(Err::Validation, "pairing must be a permutation of the three spokes");
    }
    int n1 = pole1.n;
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < pole1.n; i++) edges.emplace_back(i, pole1.h_next(i));
    for (auto [u, v] : pole1.chords) edges.emplace_back(u, v);
    for (int i = 0; i < pole2.n; i++) edges.emplace_back(n1 + i, n1 + pole2.h_next(i));
    for (auto [u, v] : pole2.chords) edges.emplace_back(n1 + u, n1 + v);
    for (int k = 0; k < 3; k++)
        edges.emplace_back(pole1.spokes[k], n1 + pole2.spokes[pairing[k]]);
    CubicGraph g = CubicGraph::create(pole1.n + pole2.n, std::move(edges));

    std::vector<int> c1(pole1.n), c2(pole2.n);
    for (int i = 0; i < pole1.n; i++) c1[i] = i;
    for (int i = 0; i < pole2.n; i++) c2[i] = n1 + i;
    TwoFactorSplit split = split_from_circuits(g, c1, c2);
    return {std::move(g), std::move(split)};
}

GraphCover combine_covers(const TwoFactorSplit& split, const ProperCover& cover1,
                          const ProperCover& cover2) {
    if (!verify_proper_cover(split.pole1, cover1).ok() ||
        !verify_proper_cover(split.pole2, cover2).ok())
        throw Error(Err::ImproperInput, "both covers must be proper for their poles");

    auto simple_spoke_label = [](const ProperCover& c, int k) {
        return label_list(static_cast<LabelSet>(c.spoke[k] & ~label(4)))[0];
    };
    // align cover2's matchings 1..3 with cover1 across the merged spokes
    std::array<int, 5> sigma{0, 0, 0, 0, 4};
    for (int k = 0; k < 3; k++) {
        int a = simple_spoke_label(cover1, k);
        int b = simple_spoke_label(cover2, split.pairing[k]);
        internal_check(sigma[b] == 0, "spoke labels permute bijectively");
        sigma[b] = a;
    }

    GraphCover out;
    auto add = [&](int matching, int edge) { out.matchings[matching - 1].push_back(edge); };
    for (int i = 0; i < split.pole1.n; i++)
        for (int m : label_list(cover1.h[i])) add(m, split.h1_to_g[i]);
    for (size_t j = 0; j < split.pole1.chords.size(); j++)
        for (int m : label_list(cover1.chord[j])) add(m, split.c1_to_g[j]);
    for (int i = 0; i < split.pole2.n; i++)
        for (int m : label_list(cover2.h[i])) add(sigma[m], split.h2_to_g[i]);
    for (size_t j = 0; j < split.pole2.chords.size(); j++)
        for (int m : label_list(cover2.chord[j])) add(sigma[m], split.c2_to_g[j]);
    for (int k = 0; k < 3; k++) {
        add(simple_spoke_label(cover1, k), split.spoke_edges[k]);
        add(4, split.spoke_edges[k]);
    }
    for (auto& m : out.matchings) std::sort(m.begin(), m.end());
    return out;
}

std::vector<std::string> verify_graph_cover(const CubicGraph& g, const GraphCover& cover) {
    std::vector<std::string> out;
    std::vector<char> covered(g.edges.size(), 0);
    for (int m = 0; m < 4; m++) {
        std::vector<int> hits(g.n, 0);
        for (int e : cover.matchings[m]) {
            if (e < 0 || e >= static_cast<int>(g.edges.size())) {
                out.push_back("matching " + std::to_string(m + 1) + " references a bad edge");
                continue;
            }
            covered[e] = 1;
            hits[g.edges[e].first]++;
            hits[g.edges[e].second]++;
        }
        for (int v = 0; v < g.n; v++)
            if (hits[v] != 1)
                out.push_back("matching " + std::to_string(m + 1) + " covers vertex " +
                              std::to_string(v) + " " + std::to_string(hits[v]) + " times");
    }
    for (size_t e = 0; e < g.edges.size(); e++)
        if (!covered[e]) out.push_back("edge " + std::to_string(e) + " is uncovered");
    return out;
}

GraphCoverCertificate cover_two_circuit_graph(const CubicGraph& g,
                                              std::optional<TwoFactorSplit> split) {
    if (!split) {
        split = find_two_odd_circuit_factor(g);
        if (!split)
            throw Error(Err::NoQualifyingTwoFactor,
                        "no 2-factor of two odd circuits with exactly three cross edges");
    }
    GraphCoverCertificate cert;
    cert.split = *split;
    CoverOutcome o1 = compute_proper_cover(split->pole1);
    CoverOutcome o2 = compute_proper_cover(split->pole2);
    cert.trace1 = o1.trace;
    cert.trace2 = o2.trace;
    cert.cover = combine_covers(*split, o1.cover, o2.cover);
    auto problems = verify_graph_cover(g, cert.cover);
    internal_check(problems.empty(), "combined matchings cover the composed graph");
    return cert;
}

} // namespace pm4cover
