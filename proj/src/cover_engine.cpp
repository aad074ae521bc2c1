#include "pm4cover/cover_engine.hpp"

#include <algorithm>

#include "pm4cover/edge_colouring.hpp"
#include "pm4cover/oracle.hpp"

namespace pm4cover {

const char* trace_rule_name(TraceRule rule) {
    switch (rule) {
        case TraceRule::ThreeOdd: return "three-odd";
        case TraceRule::Len2: return "len2";
        case TraceRule::UniqueExterior: return "unique-exterior";
        case TraceRule::Suppress: return "suppress";
    }
    return "?";
}

std::optional<TraceRule> trace_rule_from_name(const std::string& name) {
    for (TraceRule r : {TraceRule::ThreeOdd, TraceRule::Len2, TraceRule::UniqueExterior,
                        TraceRule::Suppress})
        if (name == trace_rule_name(r)) return r;
    return std::nullopt;
}

ProperCover cover_three_odd(const ThreePole& pole) {
    SegmentProfile prof = segment_profile(pole);
    if (prof.kind != ProfileKind::ThreeOdd)
        throw Error(Err::WrongProfile, "pole has an even segment");

    ProperCover cover;
    cover.h.assign(pole.n, 0);
    cover.chord.assign(pole.chords.size(), 0);
    for (size_t j = 0; j < pole.chords.size(); j++) cover.chord[j] = label(4);
    for (int k = 0; k < 3; k++) cover.spoke[k] = labels(k + 1, 4);

    // Segment between v_a and v_b alternates the simple label c and the
    // double label {a,b}; both end edges carry c.
    struct Pair { int a, b, seg; };
    for (auto [a, b, seg] : {Pair{1, 3, 0}, Pair{2, 3, 1}, Pair{1, 2, 2}}) {
        const Segment& s = prof.seg[seg];
        int c = 6 - a - b;
        std::vector<int> walk{s.from_pos};
        walk.insert(walk.end(), s.inner.begin(), s.inner.end());
        walk.push_back(s.to_pos);
        for (size_t i = 0; i + 1 < walk.size(); i++) {
            int u = walk[i], v = walk[i + 1];
            int h_index = (u + 1) % pole.n == v ? u : v;
            cover.h[h_index] = (i % 2 == 0) ? label(c) : labels(a, b);
        }
    }
    internal_check(verify_proper_cover(pole, cover).ok(), "all-odd cover is proper");
    return cover;
}

ProperCover cover_with_len2_segment(const ThreePole& pole, std::string* route_note) {
    ApexClosure closure = build_apex_closure(pole);  // WrongProfile when no length-2 first role

    std::optional<EdgeColouring> colouring;
    std::string route = "backtracking";
    try {
        QuadReduction reduction = build_quad_reduction(closure);
        EdgeColouring base = hamiltonian_colouring(reduction.b);
        int budget = 2 * static_cast<int>(reduction.b.edges.size());
        if (auto equal = kempe_equalize(reduction.b, base, reduction.bridge_outer,
                                        reduction.bridge_mid, budget)) {
            colouring = lift_through_4cycle(closure, reduction, *equal);
            route = "quad-reduction";
        }
    } catch (const Error& e) {
        if (e.code != Err::DegenerateReduction) throw;
    }
    if (!colouring) {
        colouring = backtrack_colouring(closure.graph);
        if (!colouring)
            throw Error(Err::ColouringUnavailable, "closure admits no proper 3-edge-colouring");
    }
    if (route_note) *route_note = route;
    return colouring_to_cover(pole, closure, *colouring);
}

namespace {

// Rebuild a pole by walking the old circuit from `anchor` in direction `dir`,
// skipping `removed` positions and optionally splicing a fresh
// position in right after the anchor.
struct Rebuild {
    ThreePole reduced;
    std::vector<int> old_to_new;
    std::vector<int> new_to_old;       // -1 for inserted vertices
    std::vector<int> new_h_to_old_h;   // -1 for circuit edges with an inserted end
};

Rebuild rebuild_without(const ThreePole& pole, const std::vector<char>& removed, int anchor,
                        int dir, bool insert_q,
                        const std::vector<std::pair<int, int>>& extra_chords_old) {
    Rebuild r;
    r.old_to_new.assign(pole.n, -1);
    int pos = anchor;
    do {
        if (!removed[pos]) {
            r.old_to_new[pos] = static_cast<int>(r.new_to_old.size());
            r.new_to_old.push_back(pos);
        }
        if (insert_q && pos == anchor) r.new_to_old.push_back(-1);  // q sits after the anchor
        pos = (pos + dir + pole.n) % pole.n;
    } while (pos != anchor);

    int n_new = static_cast<int>(r.new_to_old.size());
    int q_new = insert_q ? 1 : -1;

    // circuit-edge correspondence
    r.new_h_to_old_h.assign(n_new, -1);
    for (int i = 0; i < n_new; i++) {
        int a = r.new_to_old[i];
        int b = r.new_to_old[(i + 1) % n_new];
        if (a < 0 || b < 0) continue;  // touches q
        // old circuit edge between a and b if they were adjacent
        if ((a + dir + pole.n) % pole.n == b)
            r.new_h_to_old_h[i] = dir == 1 ? a : b;
    }

    std::array<int, 3> spokes{};
    for (int k = 0; k < 3; k++) {
        spokes[k] = r.old_to_new[pole.spokes[k]];
        internal_check(spokes[k] >= 0, "spoke ends survive the reduction");
    }
    std::vector<std::pair<int, int>> chords;
    for (auto [u, v] : pole.chords)
        if (!removed[u] && !removed[v]) chords.emplace_back(r.old_to_new[u], r.old_to_new[v]);
    for (auto [u, v] : extra_chords_old) {
        int nu = u == -1 ? q_new : r.old_to_new[u];
        int nv = v == -1 ? q_new : r.old_to_new[v];
        chords.emplace_back(nu, nv);
    }
    r.reduced = validate_pole(n_new, spokes, std::move(chords));
    return r;
}

std::vector<int> chord_correspondence(const ThreePole& original, const ThreePole& reduced,
                                      const std::vector<int>& new_to_old,
                                      const std::optional<std::pair<int, int>>& inserted) {
    std::vector<int> out(reduced.chords.size(), -1);
    for (size_t j = 0; j < reduced.chords.size(); j++) {
        auto [u, v] = reduced.chords[j];
        if (inserted && std::pair(u, v) == *inserted) continue;
        int ou = new_to_old[u], ov = new_to_old[v];
        internal_check(ou >= 0 && ov >= 0, "surviving chord maps to old positions");
        out[j] = original.chord_index(std::min(ou, ov), std::max(ou, ov));
        internal_check(out[j] >= 0, "surviving chord existed");
    }
    return out;
}

} // namespace

ReductionRecord reduce_unique_exterior(const ThreePole& pole) {
    SegmentProfile prof = segment_profile(pole);
    if (!prof.two_even())
        throw Error(Err::WrongProfile, "pole has no even segment");
    const Segment& e1 = prof.seg[0];
    if (e1.exterior_chords != 1)
        throw Error(Err::WrongProfile, "first even role must have a unique exterior chord");
    if (e1.length < 4)
        throw Error(Err::WrongProfile, "segment of length 2 is not reducible this way");

    std::vector<char> inner(pole.n, 0);
    for (int v : e1.inner) inner[v] = 1;

    ReductionRecord rec;
    rec.variant = ReductionRecord::Variant::UniqueExterior;
    rec.original = pole;
    rec.u_old = -1;
    for (int v : e1.inner) {
        int w = pole.partner[v];
        if (!inner[w]) {
            internal_check(rec.u_old == -1, "exactly one exterior chord");
            rec.u_old = w;
        }
    }
    internal_check(rec.u_old >= 0, "exterior chord reaches outside the segment");

    std::vector<char> removed(pole.n, 0);
    for (int v : e1.inner) {
        removed[v] = 1;
        rec.removed.push_back(v);
    }
    std::sort(rec.removed.begin(), rec.removed.end());
    for (size_t j = 0; j < pole.chords.size(); j++)
        if (removed[pole.chords[j].first] || removed[pole.chords[j].second])
            rec.removed_chord_indices.push_back(static_cast<int>(j));

    int dir = e1.inner.front() == (e1.from_pos + 1) % pole.n ? 1 : -1;
    Rebuild rb = rebuild_without(pole, removed, e1.from_pos, dir, true, {{-1, rec.u_old}});
    rec.reduced = rb.reduced;
    rec.old_to_new = rb.old_to_new;
    rec.new_h_to_old_h = rb.new_h_to_old_h;
    rec.q_pos = 1;
    int u_new = rec.old_to_new[rec.u_old];
    rec.inserted_chord = std::pair(std::min(1, u_new), std::max(1, u_new));
    rec.new_chord_to_old = chord_correspondence(pole, rec.reduced, rb.new_to_old,
                                                rec.inserted_chord);

    // circuit edges of the segment in order from v1 to v3
    int p = e1.from_pos;
    for (int i = 0; i < e1.length; i++) {
        int next = (p + dir + pole.n) % pole.n;
        rec.e1_h_edges_old.push_back(dir == 1 ? p : next);
        p = next;
    }
    internal_check(p == e1.to_pos, "segment walk ends at the shared spoke end");
    internal_check(rec.reduced.n == pole.n - e1.length + 2, "reduction shrinks the pole");
    return rec;
}

ProperCover extend_unique_exterior(const ProperCover& reduced_cover,
                                   const ReductionRecord& record) {
    if (record.variant != ReductionRecord::Variant::UniqueExterior)
        throw Error(Err::ImproperInput, "record is not a unique-exterior reduction");
    const ThreePole& reduced = record.reduced;
    const ThreePole& pole = record.original;
    if (!verify_proper_cover(reduced, reduced_cover).ok())
        throw Error(Err::ImproperInput, "reduced cover is not proper");

    // q = reduced position 1; its circuit edges are simply covered.
    LabelSet la = reduced_cover.h[0];
    LabelSet lb = reduced_cover.h[1];
    if (label_count(la) != 1 || label_count(lb) != 1 || la == lb || has_label(la, 4) ||
        has_label(lb, 4))
        throw Error(Err::ImproperInput, "edges at q must be simply covered by distinct matchings");
    int a = label_list(la)[0];
    int b = label_list(lb)[0];
    int c = 6 - a - b;

    ProperCover cover;
    cover.h.assign(pole.n, 0);
    cover.chord.assign(pole.chords.size(), 0);
    for (int k = 0; k < 3; k++) cover.spoke[k] = reduced_cover.spoke[k];
    for (int i = 0; i < reduced.n; i++)
        if (record.new_h_to_old_h[i] >= 0) cover.h[record.new_h_to_old_h[i]] = reduced_cover.h[i];
    for (size_t j = 0; j < reduced.chords.size(); j++)
        if (record.new_chord_to_old[j] >= 0)
            cover.chord[record.new_chord_to_old[j]] = reduced_cover.chord[j];

    // the segment alternates a, b from v1 to v3
    for (size_t i = 0; i < record.e1_h_edges_old.size(); i++)
        cover.h[record.e1_h_edges_old[i]] = (i % 2 == 0) ? label(a) : label(b);
    // chords losing an inner end all pick up {c, 4}
    for (int j : record.removed_chord_indices) cover.chord[j] = labels(c, 4);

    internal_check(verify_proper_cover(pole, cover).ok(), "extended cover is proper");
    return cover;
}

SuppressionRecord suppress_alternating(const ThreePole& pole, const AlternatingCircuit& circ) {
    CircuitReport check = verify_alternating_circuit(pole, circ);
    if (!check.ok())
        throw Error(Err::InvalidCircuit, check.violations.front());

    SuppressionRecord rec;
    rec.original = pole;
    std::vector<char> removed(pole.n, 0);
    std::vector<char> h_on_circuit(pole.n, 0);
    for (const EdgeRef& e : circ.edges) {
        if (e.kind == EdgeKind::Chord) {
            int j = pole.chord_index(e.a, e.b);
            rec.removed_chord_indices.push_back(j);
            removed[e.a] = removed[e.b] = 1;
        } else {
            h_on_circuit[e.a] = 1;
        }
    }
    std::sort(rec.removed_chord_indices.begin(), rec.removed_chord_indices.end());
    for (int v = 0; v < pole.n; v++)
        if (removed[v]) rec.smoothed.push_back(v);

    rec.old_to_new.assign(pole.n, -1);
    std::vector<int> new_to_old;
    for (int v = 0; v < pole.n; v++)
        if (!removed[v]) {
            rec.old_to_new[v] = static_cast<int>(new_to_old.size());
            new_to_old.push_back(v);
        }
    int n_new = static_cast<int>(new_to_old.size());
    internal_check(n_new == pole.n - 2 * static_cast<int>(rec.removed_chord_indices.size()),
                   "suppression removes two vertices per circuit chord");

    // paths between consecutive surviving vertices
    rec.paths.resize(n_new);
    for (int i = 0; i < n_new; i++) {
        int from = new_to_old[i];
        int to = new_to_old[(i + 1) % n_new];
        for (int p = from; p != to; p = pole.h_next(p))
            rec.paths[i].push_back({p, h_on_circuit[p] != 0});
        const auto& path = rec.paths[i];
        internal_check(path.size() % 2 == 1, "suppressed path has odd length");
        for (size_t k = 0; k < path.size(); k++)
            internal_check(path[k].in_circuit == (k % 2 == 1),
                           "suppressed path alternates and ends off the circuit");
    }

    std::array<int, 3> spokes{};
    for (int k = 0; k < 3; k++) spokes[k] = rec.old_to_new[pole.spokes[k]];
    std::vector<std::pair<int, int>> chords;
    for (size_t j = 0; j < pole.chords.size(); j++) {
        auto [u, v] = pole.chords[j];
        if (!removed[u] && !removed[v]) chords.emplace_back(rec.old_to_new[u], rec.old_to_new[v]);
    }
    rec.reduced = validate_pole(n_new, spokes, std::move(chords));
    rec.new_chord_to_old = chord_correspondence(pole, rec.reduced, new_to_old, std::nullopt);
    return rec;
}

ProperCover extend_through_suppression(const ProperCover& reduced_cover,
                                       const SuppressionRecord& record) {
    const ThreePole& reduced = record.reduced;
    const ThreePole& pole = record.original;
    if (!verify_proper_cover(reduced, reduced_cover).ok())
        throw Error(Err::ImproperInput, "reduced cover is not proper");

    ProperCover cover;
    cover.h.assign(pole.n, 0);
    cover.chord.assign(pole.chords.size(), 0);
    for (int k = 0; k < 3; k++) cover.spoke[k] = reduced_cover.spoke[k];
    for (size_t j = 0; j < reduced.chords.size(); j++)
        cover.chord[record.new_chord_to_old[j]] = reduced_cover.chord[j];
    for (int j : record.removed_chord_indices) cover.chord[j] = label(4);

    for (int i = 0; i < reduced.n; i++) {
        LabelSet ls = reduced_cover.h[i];
        internal_check(!has_label(ls, 4), "circuit edges never lie in matching 4");
        LabelSet off_edges, on_edges;
        if (label_count(ls) == 1) {
            off_edges = ls;                                       // simple: keep a
            on_edges = static_cast<LabelSet>(0b0111 & ~ls);       // circuit edges take {b,c}
        } else {
            off_edges = ls;                                       // double: keep {a,b}
            on_edges = static_cast<LabelSet>(0b0111 & ~ls);       // circuit edges take c
        }
        for (const auto& pe : record.paths[i])
            cover.h[pe.old_h] = pe.in_circuit ? on_edges : off_edges;
    }
    internal_check(verify_proper_cover(pole, cover).ok(), "suppression extension is proper");
    return cover;
}

namespace {

// ----- alternating circuit construction on a canonical chord-rich pole -----
//
// Canonical layout: v1 = 0, first even segment on 0..len1, shared spoke end
// v3 = len1, second even segment on len1..len1+len2, v2 = len1+len2, odd
// segment runs back to 0.

struct BaseContext {
    const ThreePole& pole;
    std::array<int, 3> a;   // inner vertices of the first even segment, from v1
    std::array<int, 3> b;   // inner vertices of the second, from v2
    std::vector<int> o_inner_from_v1;  // odd segment interior ordered from v1's side
    std::vector<int> matching_partner; // inner odd-segment matching, -1 elsewhere
};

// Path or circuit component of chords + inner matching.
struct Component {
    std::vector<int> vertices;
    std::vector<EdgeRef> edges;
    bool is_circuit = false;
};

std::vector<Component> chord_matching_components(const BaseContext& ctx) {
    const ThreePole& pole = ctx.pole;
    std::vector<char> visited(pole.n, 1);
    for (int v = 0; v < pole.n; v++)
        if (!pole.is_spoke_end(v)) visited[v] = 0;

    // Every non-spoke vertex has its chord; odd-segment interior vertices
    // additionally carry one matching edge, so edges alternate along a walk.
    std::vector<Component> out;
    auto walk = [&](int start) {
        Component comp;
        comp.vertices.push_back(start);
        visited[start] = 1;
        int cur = start;
        int kind = 0;  // 0 = take the chord next, 1 = take the matching edge next
        while (true) {
            int next = kind == 0 ? pole.partner[cur] : ctx.matching_partner[cur];
            if (next < 0) break;
            EdgeRef e = kind == 0 ? EdgeRef::chord(cur, next)
                                  : EdgeRef::h(std::min(cur, next), pole.n);
            if (next == start) {
                comp.edges.push_back(e);
                comp.is_circuit = true;
                break;
            }
            comp.edges.push_back(e);
            comp.vertices.push_back(next);
            visited[next] = 1;
            cur = next;
            kind = 1 - kind;
        }
        return comp;
    };

    // degree-1 vertices (no matching edge) first, so paths start at their ends
    for (int v = 0; v < pole.n; v++)
        if (!visited[v] && ctx.matching_partner[v] < 0) out.push_back(walk(v));
    // what remains are circuits inside the odd segment
    for (int v = 0; v < pole.n; v++)
        if (!visited[v]) out.push_back(walk(v));
    return out;
}

AlternatingCircuit circuit_from_component(const Component& comp) {
    AlternatingCircuit c;
    c.vertices = comp.vertices;
    c.edges = comp.edges;
    return c.canonical();
}

// path + the circuit edge joining its two ends (which are circuit-adjacent)
AlternatingCircuit close_path(const ThreePole& pole, const Component& path) {
    AlternatingCircuit c;
    c.vertices = path.vertices;
    c.edges = path.edges;
    int u = path.vertices.front(), v = path.vertices.back();
    internal_check((u + 1) % pole.n == v || (v + 1) % pole.n == u,
                   "path ends are circuit-adjacent");
    c.edges.push_back(EdgeRef::h((u + 1) % pole.n == v ? u : v, pole.n));
    return c.canonical();
}

// Concatenate path1 (from its a-end to its far end), a circuit edge, the
// reverse of path2, and the circuit edge back to path1's a-end.
AlternatingCircuit join_paths(const ThreePole& pole, const Component& p1, const Component& p2) {
    AlternatingCircuit c;
    c.vertices = p1.vertices;
    c.edges = p1.edges;
    int from = p1.vertices.back(), to = p2.vertices.back();
    c.edges.push_back(EdgeRef::h((from + 1) % pole.n == to ? from : to, pole.n));
    for (size_t i = p2.vertices.size(); i-- > 0;) {
        c.vertices.push_back(p2.vertices[i]);
        if (i > 0) c.edges.push_back(p2.edges[i - 1]);
    }
    int back_from = p2.vertices.front(), back_to = p1.vertices.front();
    c.edges.push_back(EdgeRef::h((back_from + 1) % pole.n == back_to ? back_from : back_to,
                                 pole.n));
    return c.canonical();
}

Component oriented_from(const Component& comp, int end) {
    if (comp.vertices.front() == end) return comp;
    Component rev;
    rev.vertices.assign(comp.vertices.rbegin(), comp.vertices.rend());
    rev.edges.assign(comp.edges.rbegin(), comp.edges.rend());
    rev.is_circuit = comp.is_circuit;
    return rev;
}

// The window construction for the three-path case: paths join the outer
// pair of each even segment and the two middles. Reroute across the
// shortest stretch of the odd segment separating the two outer paths.
std::optional<AlternatingCircuit> window_reroute(const BaseContext& ctx, const Component& path_aa,
                                                 const Component& path_bb, bool corrected_ground_set,
                                                 std::string* failure) {
    const ThreePole& pole = ctx.pole;
    const std::vector<int>& order = ctx.o_inner_from_v1;
    std::vector<int> rank(pole.n, -1);
    for (size_t i = 0; i < order.size(); i++) rank[order[i]] = static_cast<int>(i);

    // side: 0 = outer-first (red), 1 = outer-second (green), 2 = middle path
    std::vector<int> side(pole.n, -1);
    for (int v : path_aa.vertices) side[v] = 0;
    for (int v : path_bb.vertices) side[v] = 1;

    std::vector<std::pair<int, int>> marked;  // (rank, side) of non-grey odd-segment vertices
    for (int v : order)
        if (side[v] == 0 || side[v] == 1) marked.emplace_back(rank[v], side[v]);
    bool has0 = false, has1 = false;
    for (auto [r, s] : marked) (s == 0 ? has0 : has1) = true;
    if (!has0 || !has1) {
        if (failure) *failure = "outer paths do not both touch the odd segment";
        return std::nullopt;
    }

    // shortest window between opposite-side marks, smallest start on ties
    int best_i = -1, best_len = pole.n + 1;
    for (size_t k = 0; k + 1 < marked.size(); k++)
        if (marked[k].second != marked[k + 1].second) {
            int len = marked[k + 1].first - marked[k].first;
            if (len < best_len) {
                best_len = len;
                best_i = static_cast<int>(k);
            }
        }
    if (best_i < 0) {
        if (failure) *failure = "no window between the outer paths";
        return std::nullopt;
    }
    int z_near = order[marked[best_i].first];        // window end nearer v1
    int z_far = order[marked[best_i + 1].first];
    int z_r = marked[best_i].second == 0 ? z_near : z_far;
    int z_g = marked[best_i].second == 0 ? z_far : z_near;

    // the red/green edges at the window ends are their matching edges,
    // pointing away from the window
    int z_r_prime = ctx.matching_partner[z_r];
    int z_g_prime = ctx.matching_partner[z_g];
    if (z_r_prime < 0 || z_g_prime < 0 || side[z_r_prime] != 0 || side[z_g_prime] != 1) {
        if (failure) *failure = "window ends do not continue into their own paths";
        return std::nullopt;
    }

    // sub-path from z' to its far segment end, avoiding the window end
    auto tail_from = [&](const Component& comp, int z_prime, int z) {
        Component oriented = oriented_from(comp, comp.vertices.front());
        // locate z_prime and walk away from z
        std::vector<int> vs = oriented.vertices;
        size_t pos = std::find(vs.begin(), vs.end(), z_prime) - vs.begin();
        size_t zpos = std::find(vs.begin(), vs.end(), z) - vs.begin();
        Component tail;
        if (zpos < pos) {
            tail.vertices.assign(vs.begin() + static_cast<long>(pos), vs.end());
            tail.edges.assign(oriented.edges.begin() + static_cast<long>(pos), oriented.edges.end());
        } else {
            tail.vertices.assign(vs.begin(), vs.begin() + static_cast<long>(pos) + 1);
            std::reverse(tail.vertices.begin(), tail.vertices.end());
            tail.edges.assign(oriented.edges.begin(), oriented.edges.begin() + static_cast<long>(pos));
            std::reverse(tail.edges.begin(), tail.edges.end());
        }
        return tail;  // runs z_prime .. far end
    };
    Component tail_a = tail_from(path_aa, z_r_prime, z_r);
    Component tail_b = tail_from(path_bb, z_g_prime, z_g);

    std::vector<char> drop_chord(pole.chords.size(), 0);
    std::vector<char> excluded(pole.n, 0);  // excluded from the new inner matching
    excluded[z_r_prime] = excluded[z_g_prime] = 1;
    auto drop_tail = [&](const Component& tail) {
        for (const EdgeRef& e : tail.edges)
            if (e.kind == EdgeKind::Chord) drop_chord[pole.chord_index(e.a, e.b)] = 1;
        if (corrected_ground_set)
            for (int v : tail.vertices)
                if (rank[v] >= 0) excluded[v] = 1;
    };
    drop_tail(tail_a);
    drop_tail(tail_b);

    // replacement inner matching on the remaining odd-segment runs; odd runs
    // leave their end nearest v1 exposed
    std::vector<std::pair<int, int>> new_matching;
    size_t i = 0;
    while (i < order.size()) {
        if (excluded[order[i]]) {
            i++;
            continue;
        }
        size_t j = i;
        while (j < order.size() && !excluded[order[j]]) j++;
        size_t start = (j - i) % 2 == 1 ? i + 1 : i;  // expose the vertex nearest v1
        for (size_t k = start; k + 1 < j; k += 2)
            new_matching.emplace_back(order[k], order[k + 1]);
        i = j;
    }

    // assemble the candidate edge set
    int far_a = tail_a.vertices.back();
    int keep_a = far_a == ctx.a[0] ? ctx.a[2] : ctx.a[0];
    int far_b = tail_b.vertices.back();
    int keep_b = far_b == ctx.b[0] ? ctx.b[2] : ctx.b[0];
    if ((far_a != ctx.a[0] && far_a != ctx.a[2]) || (far_b != ctx.b[0] && far_b != ctx.b[2])) {
        if (failure) *failure = "tail does not end at an outer inner vertex";
        return std::nullopt;
    }

    std::vector<EdgeRef> edge_set;
    for (size_t j2 = 0; j2 < pole.chords.size(); j2++)
        if (!drop_chord[j2])
            edge_set.push_back(EdgeRef::chord(pole.chords[j2].first, pole.chords[j2].second));
    for (auto [u, v] : new_matching) {
        int adjacent = (u + 1) % pole.n == v ? u : v;
        edge_set.push_back(EdgeRef::h(adjacent, pole.n));
    }
    edge_set.push_back(EdgeRef::h(std::min(ctx.a[1], keep_a), pole.n));
    edge_set.push_back(EdgeRef::h(std::min(ctx.b[1], keep_b), pole.n));

    // 2-regularity check and circuit extraction
    std::vector<std::vector<EdgeRef>> at(pole.n);
    for (const EdgeRef& e : edge_set) {
        at[e.a].push_back(e);
        at[e.b].push_back(e);
    }
    int lowest = -1;
    for (int v = 0; v < pole.n; v++) {
        if (at[v].size() != 0 && at[v].size() != 2) {
            if (failure)
                *failure = "candidate edge set is not 2-regular at vertex " + std::to_string(v);
            return std::nullopt;
        }
        if (lowest < 0 && at[v].size() == 2) lowest = v;
    }
    if (lowest < 0) {
        if (failure) *failure = "candidate edge set is empty";
        return std::nullopt;
    }

    AlternatingCircuit circ;
    int cur = lowest;
    EdgeRef via = at[cur][0].kind == EdgeKind::Chord ? at[cur][0] : at[cur][1];
    do {
        circ.vertices.push_back(cur);
        circ.edges.push_back(via);
        cur = via.a == cur ? via.b : via.a;
        via = at[cur][0] == via ? at[cur][1] : at[cur][0];
    } while (cur != lowest);
    circ = circ.canonical();
    if (!verify_alternating_circuit(pole, circ).ok()) {
        if (failure) *failure = "extracted component is not an alternating circuit";
        return std::nullopt;
    }
    return circ;
}

CircuitSearch base_case_on_canonical(const ThreePole& pole) {
    internal_check(pole.spokes[0] == 0 && pole.spokes[2] == 4 && pole.spokes[1] == 8,
                   "canonical layout");
    BaseContext ctx{pole, {1, 2, 3}, {7, 6, 5}, {}, {}};
    ctx.matching_partner.assign(pole.n, -1);
    for (int p = 9; p + 1 < pole.n; p += 2) {
        ctx.matching_partner[p] = p + 1;
        ctx.matching_partner[p + 1] = p;
    }
    for (int p = pole.n - 1; p >= 9; p--) ctx.o_inner_from_v1.push_back(p);

    auto comps = chord_matching_components(ctx);

    // a ready-made circuit among the components wins immediately
    for (const auto& comp : comps)
        if (comp.is_circuit) return {circuit_from_component(comp), false, ""};

    internal_check(comps.size() == 3, "three chord-matching paths");
    auto end_index = [&](const Component& comp, bool front) {
        int v = front ? comp.vertices.front() : comp.vertices.back();
        for (int k = 0; k < 3; k++) {
            if (ctx.a[k] == v) return std::pair('a', k);
            if (ctx.b[k] == v) return std::pair('b', k);
        }
        internal_check(false, "path ends at an even-segment inner vertex");
        return std::pair('?', -1);
    };

    // paths joining the middle of a segment to one of its outer vertices
    // close directly with one circuit edge
    for (const auto& comp : comps) {
        auto [c1, k1] = end_index(comp, true);
        auto [c2, k2] = end_index(comp, false);
        if (c1 == c2 && (k1 == 1 || k2 == 1)) {
            // orient from the middle vertex
            int mid = c1 == 'a' ? ctx.a[1] : ctx.b[1];
            return {close_path(pole, oriented_from(comp, mid)), false, ""};
        }
    }

    // all three paths crossing between the segments
    bool all_cross = true;
    for (const auto& comp : comps) {
        auto [c1, k1] = end_index(comp, true);
        auto [c2, k2] = end_index(comp, false);
        if (c1 == c2) all_cross = false;
    }
    if (all_cross) {
        std::array<const Component*, 3> by_a{};
        std::array<Component, 3> oriented;
        for (const auto& comp : comps) {
            auto [c1, k1] = end_index(comp, true);
            int ka = c1 == 'a' ? k1 : end_index(comp, false).second;
            oriented[ka] = oriented_from(comp, ctx.a[ka]);
            by_a[ka] = &oriented[ka];
        }
        auto b_end = [&](int ka) {
            int v = by_a[ka]->vertices.back();
            for (int k = 0; k < 3; k++)
                if (ctx.b[k] == v) return k;
            internal_check(false, "crossing path ends in the second segment");
            return -1;
        };
        if (b_end(1) == 1) {
            // middle path meets the middle: join it with the path from a_1
            return {join_paths(pole, *by_a[0], *by_a[1]), false, ""};
        }
        int l = b_end(0) == 1 ? 0 : 2;
        internal_check(b_end(l) == 1, "some path ends at the middle inner vertex");
        return {join_paths(pole, *by_a[l], *by_a[1]), false, ""};
    }

    // remaining shape: one path across each segment's outer vertices plus a
    // middle-to-middle path
    const Component* path_aa = nullptr;
    const Component* path_bb = nullptr;
    for (const auto& comp : comps) {
        auto [c1, k1] = end_index(comp, true);
        auto [c2, k2] = end_index(comp, false);
        if (c1 == 'a' && c2 == 'a') path_aa = &comp;
        if (c1 == 'b' && c2 == 'b') path_bb = &comp;
    }
    internal_check(path_aa && path_bb, "outer paths exist in the remaining case");

    std::string failure;
    if (auto circ = window_reroute(ctx, *path_aa, *path_bb, false, &failure))
        return {*circ, false, ""};
    // Retry with the matching ground set also excluding the rerouted tails'
    // odd-segment vertices; the plain set leaves them half-matched whenever a
    // tail wanders through the odd segment.
    if (auto circ = window_reroute(ctx, *path_aa, *path_bb, true, &failure))
        return {*circ, false, "window reroute used the reduced matching ground set"};

    auto fallback = find_any_alternating_circuit(pole);
    internal_check(fallback.has_value(), "chord-rich pole admits an alternating circuit");
    return {*fallback, true, "window reroute failed (" + failure + "); exhaustive search used"};
}

} // namespace

CircuitSearch base_case_circuit(const ThreePole& pole) {
    SegmentProfile prof = segment_profile(pole);
    if (!prof.rich() || prof.seg[0].length != 4 || prof.seg[1].length != 4)
        throw Error(Err::WrongProfile, "base construction needs both even segments of length 4 "
                                       "with three exterior chords each");
    auto [canonical, rel] = relabel_to_e1(pole, 0);
    CircuitSearch found = base_case_on_canonical(canonical);
    found.circuit = transport_circuit(found.circuit, canonical, rel.inverse());
    internal_check(verify_alternating_circuit(pole, found.circuit).ok(),
                   "constructed circuit is valid");
    return found;
}

namespace {

ReductionRecord shorten_segment(const ThreePole& pole, bool front) {
    // canonical layout assumed: first even segment on 0..len
    SegmentProfile prof = segment_profile(pole);
    const Segment& e1 = prof.seg[0];
    int len = e1.length;
    int u1 = front ? 1 : len - 1;
    int u2 = front ? 2 : len - 2;

    ReductionRecord rec;
    rec.variant = front ? ReductionRecord::Variant::InductionFront
                        : ReductionRecord::Variant::InductionBack;
    rec.original = pole;
    rec.removed = {std::min(u1, u2), std::max(u1, u2)};

    std::vector<char> removed(pole.n, 0);
    removed[u1] = removed[u2] = 1;
    int p1 = pole.partner[u1], p2 = pole.partner[u2];
    for (size_t j = 0; j < pole.chords.size(); j++)
        if (removed[pole.chords[j].first] || removed[pole.chords[j].second])
            rec.removed_chord_indices.push_back(static_cast<int>(j));

    std::vector<std::pair<int, int>> extra;
    if (p1 != u2) {
        extra.emplace_back(p1, p2);
        rec.bridge_path = {p1, u1, u2, p2};
    }
    Rebuild rb = rebuild_without(pole, removed, 0, 1, false, extra);
    rec.reduced = rb.reduced;
    rec.old_to_new = rb.old_to_new;
    rec.new_h_to_old_h = rb.new_h_to_old_h;
    if (p1 != u2) {
        int nu = rec.old_to_new[p1], nv = rec.old_to_new[p2];
        rec.inserted_chord = std::pair(std::min(nu, nv), std::max(nu, nv));
    }
    rec.new_chord_to_old =
        chord_correspondence(pole, rec.reduced, rb.new_to_old, rec.inserted_chord);
    return rec;
}

AlternatingCircuit lift_circuit(const AlternatingCircuit& reduced_circ,
                                const ReductionRecord& rec) {
    const ThreePole& pole = rec.original;
    const ThreePole& reduced = rec.reduced;
    std::vector<int> new_to_old(reduced.n, -1);
    for (int v = 0; v < pole.n; v++)
        if (rec.old_to_new[v] >= 0) new_to_old[rec.old_to_new[v]] = v;

    AlternatingCircuit out;
    size_t m = reduced_circ.edges.size();
    for (size_t i = 0; i < m; i++) {
        int from_old = new_to_old[reduced_circ.vertices[i]];
        int to_old = new_to_old[reduced_circ.vertices[(i + 1) % m]];
        const EdgeRef& e = reduced_circ.edges[i];
        out.vertices.push_back(from_old);
        if (e.kind == EdgeKind::Chord && rec.inserted_chord &&
            std::pair(e.a, e.b) == *rec.inserted_chord) {
            // replace by the three-edge path through the removed vertices
            auto [w1, u1, u2, w2] = rec.bridge_path;
            bool forward = from_old == w1;
            internal_check(forward || from_old == w2, "bridge chord endpoints map back");
            int x1 = forward ? u1 : u2;
            int x2 = forward ? u2 : u1;
            out.edges.push_back(EdgeRef::chord(from_old, x1));
            out.vertices.push_back(x1);
            out.edges.push_back(EdgeRef::h(std::min(u1, u2), pole.n));
            out.vertices.push_back(x2);
            out.edges.push_back(EdgeRef::chord(x2, to_old));
        } else if (e.kind == EdgeKind::Chord) {
            out.edges.push_back(EdgeRef::chord(from_old, to_old));
        } else {
            internal_check(rec.new_h_to_old_h[e.a] >= 0,
                           "circuit avoids the spliced circuit edges");
            out.edges.push_back(EdgeRef::h(rec.new_h_to_old_h[e.a], pole.n));
        }
    }
    return out.canonical();
}

} // namespace

CircuitSearch induction_step(const ThreePole& pole) {
    SegmentProfile prof = segment_profile(pole);
    if (!prof.rich())
        throw Error(Err::WrongProfile, "pole is not chord-rich on both even segments");
    if (prof.seg[0].length <= 4 && prof.seg[1].length <= 4)
        throw Error(Err::WrongProfile, "both even segments already have length 4");

    int work = prof.seg[0].length > 4 ? 0 : 1;
    auto [canonical, rel] = relabel_to_e1(pole, work);

    for (bool front : {true, false}) {
        ReductionRecord rec = shorten_segment(canonical, front);
        if (!segment_profile(rec.reduced).rich()) continue;
        CircuitSearch sub = find_alternating_circuit(rec.reduced);
        AlternatingCircuit lifted = lift_circuit(sub.circuit, rec);
        internal_check(verify_alternating_circuit(canonical, lifted).ok(),
                       "lifted circuit is valid");
        CircuitSearch out{transport_circuit(lifted, canonical, rel.inverse()),
                          sub.fallback_used, sub.note};
        internal_check(verify_alternating_circuit(pole, out.circuit).ok(),
                       "transported circuit is valid");
        return out;
    }
    throw Error(Err::InternalProofViolation,
                "neither shortening keeps both even segments chord-rich");
}

CircuitSearch find_alternating_circuit(const ThreePole& pole) {
    SegmentProfile prof = segment_profile(pole);
    if (!prof.rich())
        throw Error(Err::WrongProfile, "pole is not chord-rich on both even segments");
    if (prof.seg[0].length == 4 && prof.seg[1].length == 4) return base_case_circuit(pole);
    return induction_step(pole);
}

CoverOutcome compute_proper_cover(const ThreePole& pole) {
    std::vector<TraceStep> trace;
    auto run = [&](const ThreePole& p, auto&& self) -> ProperCover {
        SegmentProfile prof = segment_profile(p);

        if (prof.kind == ProfileKind::ThreeOdd) {
            trace.push_back({TraceRule::ThreeOdd, p.n, p.n, ""});
            return cover_three_odd(p);
        }

        // lowest-vertex tie-break between the two even segments
        auto segment_vertices = [&](int k) {
            std::vector<int> vs{prof.seg[k].from_pos, prof.seg[k].to_pos};
            vs.insert(vs.end(), prof.seg[k].inner.begin(), prof.seg[k].inner.end());
            std::sort(vs.begin(), vs.end());
            return vs;
        };
        auto pick = [&](auto&& pred) {
            bool c0 = pred(prof.seg[0]), c1 = pred(prof.seg[1]);
            if (c0 && c1) return segment_vertices(0) <= segment_vertices(1) ? 0 : 1;
            return c0 ? 0 : c1 ? 1 : -1;
        };

        if (int k = pick([](const Segment& s) { return s.length == 2; }); k >= 0) {
            auto [canonical, relab] = relabel_to_e1(p, k);
            std::string route;
            ProperCover cover = cover_with_len2_segment(canonical, &route);
            trace.push_back({TraceRule::Len2, p.n, p.n, route});
            return transport_cover(cover, canonical, p, relab.inverse());
        }

        if (int k = pick([](const Segment& s) { return s.exterior_chords == 1; }); k >= 0) {
            auto [canonical, relab] = relabel_to_e1(p, k);
            ReductionRecord rec = reduce_unique_exterior(canonical);
            trace.push_back({TraceRule::UniqueExterior, p.n, rec.reduced.n,
                             "q=" + std::to_string(rec.q_pos) +
                                 ",u=" + std::to_string(rec.u_old)});
            ProperCover sub = self(rec.reduced, self);
            ProperCover cover = extend_unique_exterior(sub, rec);
            return transport_cover(cover, canonical, p, relab.inverse());
        }

        internal_check(prof.rich(), "remaining poles are chord-rich on both even segments");
        CircuitSearch found = find_alternating_circuit(p);
        SuppressionRecord rec = suppress_alternating(p, found.circuit);
        std::string detail = found.circuit.to_string();
        if (found.fallback_used) detail += " [fallback: " + found.note + "]";
        trace.push_back({TraceRule::Suppress, p.n, rec.reduced.n, detail});
        ProperCover sub = self(rec.reduced, self);
        return extend_through_suppression(sub, rec);
    };

    try {
        ProperCover cover = run(pole, run);
        CoverReport report = verify_proper_cover(pole, cover);
        if (!report.ok())
            throw Error(Err::InternalProofViolation,
                        "constructed cover fails verification: " +
                            report.violations.front().detail);
        return {std::move(cover), std::move(trace)};
    } catch (const Error& e) {
        throw EngineError(e, trace);
    }
}

} // namespace pm4cover
