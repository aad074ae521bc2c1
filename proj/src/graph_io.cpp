#include "pm4cover/graph_io.hpp"

#include <algorithm>

#include <json.hpp>

namespace pm4cover {

using json = nlohmann::ordered_json;

namespace {

json pole_to_json(const ThreePole& pole) {
    json j;
    j["n"] = pole.n;
    j["spokes"] = pole.spokes;
    json chords = json::array();
    for (auto [u, v] : pole.chords) chords.push_back({u, v});
    j["chords"] = chords;
    return j;
}

ThreePole pole_from_json(const json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("spokes") || !j.contains("chords"))
        throw Error(Err::Syntax, "pole document needs fields n, spokes, chords");
    if (!j["n"].is_number_integer() || !j["spokes"].is_array() || j["spokes"].size() != 3 ||
        !j["chords"].is_array())
        throw Error(Err::Syntax, "malformed pole document");
    std::array<int, 3> spokes{};
    for (int k = 0; k < 3; k++) {
        if (!j["spokes"][k].is_number_integer())
            throw Error(Err::Syntax, "spoke positions must be integers");
        spokes[k] = j["spokes"][k].get<int>();
    }
    std::vector<std::pair<int, int>> chords;
    for (const auto& c : j["chords"]) {
        if (!c.is_array() || c.size() != 2 || !c[0].is_number_integer() ||
            !c[1].is_number_integer())
            throw Error(Err::Syntax, "chords must be pairs of integers");
        chords.emplace_back(c[0].get<int>(), c[1].get<int>());
    }
    try {
        return validate_pole(j["n"].get<int>(), spokes, std::move(chords));
    } catch (const Error& e) {
        throw Error(Err::Validation, e.what());
    }
}

json trace_to_json(const std::vector<TraceStep>& trace) {
    json out = json::array();
    for (const TraceStep& step : trace) {
        json s;
        s["rule"] = trace_rule_name(step.rule);
        s["before"] = step.size_before;
        s["after"] = step.size_after;
        s["detail"] = step.detail;
        out.push_back(s);
    }
    return out;
}

std::vector<TraceStep> trace_from_json(const json& j) {
    std::vector<TraceStep> out;
    if (!j.is_array()) throw Error(Err::Syntax, "trace must be an array");
    for (const auto& s : j) {
        auto rule = trace_rule_from_name(s.value("rule", ""));
        if (!rule) throw Error(Err::Syntax, "unknown trace rule");
        out.push_back({*rule, s.value("before", 0), s.value("after", 0), s.value("detail", "")});
    }
    return out;
}

json parse_text(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw Error(Err::Syntax, "invalid JSON");
    return j;
}

} // namespace

std::string serialize_pole(const ThreePole& pole) { return pole_to_json(pole).dump() + "\n"; }

ThreePole parse_pole(const std::string& text) { return pole_from_json(parse_text(text)); }

std::string serialize_cover(const ThreePole& pole, const ProperCover& cover,
                            const std::vector<TraceStep>& trace) {
    json j;
    j["pole"] = pole_to_json(pole);
    json edges = json::array();
    auto record = [&](const char* kind, std::vector<int> endpoints, LabelSet ls) {
        json e;
        e["kind"] = kind;
        e["endpoints"] = endpoints;
        e["matchings"] = label_list(ls);
        edges.push_back(e);
    };
    for (int i = 0; i < pole.n; i++) record("h", {i, pole.h_next(i)}, cover.h[i]);
    for (size_t c = 0; c < pole.chords.size(); c++)
        record("chord", {pole.chords[c].first, pole.chords[c].second}, cover.chord[c]);
    for (int k = 0; k < 3; k++) record("spoke", {pole.spokes[k]}, cover.spoke[k]);
    j["edges"] = edges;
    j["proper"] = verify_proper_cover(pole, cover).ok();
    j["trace"] = trace_to_json(trace);
    return j.dump() + "\n";
}

CoverDocument parse_cover(const std::string& text) {
    json j = parse_text(text);
    if (!j.is_object() || !j.contains("pole") || !j.contains("edges"))
        throw Error(Err::Syntax, "cover document needs fields pole, edges");
    CoverDocument doc;
    doc.pole = pole_from_json(j["pole"]);
    doc.cover.h.assign(doc.pole.n, 0);
    doc.cover.chord.assign(doc.pole.chords.size(), 0);

    for (const auto& e : j["edges"]) {
        std::string kind = e.value("kind", "");
        if (!e.contains("endpoints") || !e.contains("matchings"))
            throw Error(Err::Syntax, "edge record needs endpoints and matchings");
        LabelSet ls = 0;
        for (const auto& m : e["matchings"]) {
            int v = m.get<int>();
            if (v < 1 || v > 4) throw Error(Err::Syntax, "matchings must be in 1..4");
            ls |= label(v);
        }
        auto ep = e["endpoints"];
        if (kind == "h") {
            int a = ep.at(0).get<int>(), b = ep.at(1).get<int>();
            if (a < 0 || a >= doc.pole.n || b != (a + 1) % doc.pole.n)
                throw Error(Err::Reference, "circuit edge (" + std::to_string(a) + "," +
                                                std::to_string(b) + ") not in pole");
            doc.cover.h[a] = ls;
        } else if (kind == "chord") {
            int idx = doc.pole.chord_index(std::min(ep.at(0).get<int>(), ep.at(1).get<int>()),
                                           std::max(ep.at(0).get<int>(), ep.at(1).get<int>()));
            if (idx < 0)
                throw Error(Err::Reference, "chord (" + ep.at(0).dump() + "," + ep.at(1).dump() +
                                                ") not in pole");
            doc.cover.chord[idx] = ls;
        } else if (kind == "spoke") {
            int k = doc.pole.spoke_index(ep.at(0).get<int>());
            if (k < 0) throw Error(Err::Reference, "spoke " + ep.at(0).dump() + " not in pole");
            doc.cover.spoke[k] = ls;
        } else {
            throw Error(Err::Syntax, "unknown edge kind '" + kind + "'");
        }
    }
    if (j.contains("trace")) doc.trace = trace_from_json(j["trace"]);
    doc.proper = verify_proper_cover(doc.pole, doc.cover).ok();
    return doc;
}

// ---------------------------------------------------------------- graph6 --

namespace {

void append_number(std::string& out, long long n) {
    if (n <= 62) {
        out.push_back(static_cast<char>(63 + n));
    } else if (n <= 258047) {
        out.push_back(126);
        for (int shift = 12; shift >= 0; shift -= 6)
            out.push_back(static_cast<char>(63 + ((n >> shift) & 0x3F)));
    } else {
        throw Error(Err::Syntax, "graph too large for this graph6 writer");
    }
}

} // namespace

std::string serialize_graph6(const CubicGraph& g) {
    std::vector<std::vector<char>> adjacent(g.n, std::vector<char>(g.n, 0));
    for (auto [u, v] : g.edges) {
        if (u == v) throw Error(Err::Syntax, "graph6 cannot encode loops");
        if (adjacent[u][v]) throw Error(Err::Syntax, "graph6 cannot encode parallel edges");
        adjacent[u][v] = adjacent[v][u] = 1;
    }
    std::string out;
    append_number(out, g.n);
    int bit = 0, acc = 0;
    for (int y = 1; y < g.n; y++)
        for (int x = 0; x < y; x++) {
            acc = (acc << 1) | adjacent[x][y];
            if (++bit == 6) {
                out.push_back(static_cast<char>(63 + acc));
                bit = 0;
                acc = 0;
            }
        }
    if (bit) out.push_back(static_cast<char>(63 + (acc << (6 - bit))));
    return out;
}

std::pair<int, std::vector<std::pair<int, int>>> parse_graph6(const std::string& text) {
    std::string s = text;
    while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.pop_back();
    const std::string header = ">>graph6<<";
    if (s.rfind(header, 0) == 0) s = s.substr(header.size());
    if (s.empty()) throw Error(Err::Syntax, "empty graph6 input");
    if (s[0] == ':' || s[0] == ';')
        throw Error(Err::Syntax, "sparse6 input is not supported; supply graph6");

    size_t at = 0;
    auto next_byte = [&]() -> int {
        if (at >= s.size()) throw Error(Err::Syntax, "truncated graph6 input");
        unsigned char c = static_cast<unsigned char>(s[at++]);
        if (c < 63 || c > 126) throw Error(Err::Syntax, "byte out of graph6 range");
        return c - 63;
    };

    long long n;
    int first = next_byte();
    if (first < 63) {
        n = first;
    } else {
        int b0 = next_byte();
        if (b0 == 63)
            throw Error(Err::Syntax, "graph too large for this graph6 reader");
        int b1 = next_byte(), b2 = next_byte();
        n = (static_cast<long long>(b0) << 12) | (b1 << 6) | b2;
    }

    std::vector<std::pair<int, int>> edges;
    int bit = 0, acc = 0;
    for (int y = 1; y < n; y++)
        for (int x = 0; x < y; x++) {
            if (bit == 0) {
                acc = next_byte();
                bit = 6;
            }
            bit--;
            if ((acc >> bit) & 1) edges.emplace_back(x, y);
        }
    if (at != s.size()) throw Error(Err::Syntax, "trailing bytes after graph6 data");
    return {static_cast<int>(n), std::move(edges)};
}

CubicGraph parse_graph6_cubic(const std::string& text) {
    auto [n, edges] = parse_graph6(text);
    return CubicGraph::create(n, std::move(edges));
}

// ---------------------------------------------------- two-factor documents --

std::string serialize_two_factor(const TwoFactorSplit& split) {
    json j;
    j["circuit1"] = split.circuit1;
    j["circuit2"] = split.circuit2;
    return j.dump() + "\n";
}

TwoFactorSplit parse_two_factor(const CubicGraph& g, const std::string& text) {
    json j = parse_text(text);
    if (!j.is_object() || !j.contains("circuit1") || !j.contains("circuit2"))
        throw Error(Err::Syntax, "two-factor document needs circuit1 and circuit2");
    std::vector<int> c1, c2;
    for (const auto& v : j["circuit1"]) c1.push_back(v.get<int>());
    for (const auto& v : j["circuit2"]) c2.push_back(v.get<int>());
    return split_from_circuits(g, c1, c2);
}

std::string serialize_graph_cover(const CubicGraph& g, const GraphCoverCertificate& cert) {
    json j;
    j["n"] = g.n;
    json matchings = json::array();
    for (const auto& m : cert.cover.matchings) {
        json edges = json::array();
        for (int e : m) edges.push_back({g.edges[e].first, g.edges[e].second});
        matchings.push_back(edges);
    }
    j["matchings"] = matchings;
    j["split"]["circuit1"] = cert.split.circuit1;
    j["split"]["circuit2"] = cert.split.circuit2;
    j["traces"] = json::array({trace_to_json(cert.trace1), trace_to_json(cert.trace2)});
    j["covered"] = verify_graph_cover(g, cert.cover).empty();
    return j.dump() + "\n";
}

} // namespace pm4cover
