#include <doctest.h>

#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "pm4cover/cover_engine.hpp"
#include "pm4cover/graph_io.hpp"
#include "pm4cover/instance_gen.hpp"

using namespace pm4cover;
using namespace pm4cover::fixtures;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace

TEST_CASE("pole documents round-trip canonically") {
    CHECK(serialize_pole(t3()) == "{\"n\":3,\"spokes\":[0,1,2],\"chords\":[]}\n");
    CHECK(parse_pole(serialize_pole(b9())) == b9());
    // chord order is normalised, so equal poles give equal bytes
    ThreePole scrambled = validate_pole(9, {0, 8, 4}, {{3, 5}, {7, 2}, {6, 1}});
    CHECK(serialize_pole(scrambled) == serialize_pole(b9()));
}

TEST_CASE("pole parsing surfaces syntax and validation errors") {
    CHECK_THROWS_AS(parse_pole("{"), Error);
    CHECK_THROWS_AS(parse_pole("{\"n\":3}"), Error);
    try {
        parse_pole("{\"n\":4,\"spokes\":[0,1,2],\"chords\":[[3,3]]}");
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code == Err::Validation);
    }
}

TEST_CASE("cover documents round-trip with their trace") {
    CoverOutcome outcome = compute_proper_cover(b9());
    std::string doc = serialize_cover(b9(), outcome.cover, outcome.trace);
    CoverDocument parsed = parse_cover(doc);
    CHECK(parsed.pole == b9());
    CHECK(parsed.cover == outcome.cover);
    CHECK(parsed.trace == outcome.trace);
    CHECK(parsed.proper);
    // second round-trip is byte-identical
    CHECK(serialize_cover(parsed.pole, parsed.cover, parsed.trace) == doc);
}

TEST_CASE("cover parsing rejects references to absent edges") {
    CoverOutcome outcome = compute_proper_cover(b9());
    std::string doc = serialize_cover(b9(), outcome.cover, outcome.trace);
    std::string broken = doc;
    auto at = broken.find("[1,6]");
    REQUIRE(at != std::string::npos);
    broken.replace(at, 5, "[1,5]");
    CHECK_THROWS_AS(parse_cover(broken), Error);
}

TEST_CASE("the end-to-end 9-vertex certificate matches the golden file") {
    CoverOutcome outcome = compute_proper_cover(b9());
    std::string doc = serialize_cover(b9(), outcome.cover, outcome.trace);
    CHECK(doc == slurp(std::string(PM4_GOLDEN_DIR) + "/b9.cover"));
}

TEST_CASE("graph6 encodes the complete graph on four vertices as C~") {
    CHECK(serialize_graph6(k4()) == "C~");
    auto [n, edges] = parse_graph6("C~");
    CHECK(n == 4);
    CHECK(edges.size() == 6);
    CHECK(parse_graph6_cubic("C~").n == 4);
}

TEST_CASE("graph6 round-trips the classic snark byte for byte") {
    std::string bytes = serialize_graph6(petersen());
    CubicGraph parsed = parse_graph6_cubic(bytes);
    CHECK(serialize_graph6(parsed) == bytes);
    CHECK(parsed.n == 10);
    CHECK(parsed.edges.size() == 15);
}

TEST_CASE("graph6 ingestion rejects what it should") {
    // 4-cycle: degree 2 everywhere
    CubicGraph bad;
    try {
        std::string c4 = "Cr";  // 4 vertices, edges (0,1),(1,2),(2,3),(0,3)
        auto [n, edges] = parse_graph6(c4);
        CubicGraph::create(n, edges);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code == Err::Degree);
    }
    try {
        parse_graph6(":Fa@x^");
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code == Err::Syntax);
        CHECK(std::string(e.what()).find("sparse6") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_graph6("C"), Error);       // truncated
    CHECK_THROWS_AS(parse_graph6("C~~~"), Error);    // trailing bytes
    // the optional header is tolerated
    CHECK(parse_graph6(">>graph6<<C~").first == 4);
}

TEST_CASE("two-factor documents reconstruct the split") {
    auto [g, split] = compose_two_circuit_graph(b9(), a7(), {0, 1, 2});
    std::string doc = serialize_two_factor(split);
    TwoFactorSplit parsed = parse_two_factor(g, doc);
    CHECK(parsed.circuit1 == split.circuit1);
    CHECK(parsed.circuit2 == split.circuit2);
    CHECK(parsed.pole1 == split.pole1);
    CHECK(parsed.pole2 == split.pole2);
    CHECK(parsed.pairing == split.pairing);

    CHECK_THROWS_AS(parse_two_factor(g, "{\"circuit1\":[0,1,2],\"circuit2\":[3,4,5]}"), Error);
}

TEST_CASE("graph cover certificates serialise with verdict and traces") {
    auto [g, split] = compose_two_circuit_graph(t3(), a7(), {0, 1, 2});
    GraphCoverCertificate cert = cover_two_circuit_graph(g, split);
    std::string doc = serialize_graph_cover(g, cert);
    CHECK(doc.find("\"covered\":true") != std::string::npos);
    CHECK(doc.find("\"traces\"") != std::string::npos);
}

TEST_CASE("serialisation is canonical across generated instances") {
    Rng64 rng(5150);
    for (int trial = 0; trial < 20; trial++) {
        int n = 5 + 2 * rng.below(10);
        ThreePole pole = gen_random_pole({n, rng.next(), ProfileConstraint::Any, true});
        std::string doc = serialize_pole(pole);
        CHECK(serialize_pole(parse_pole(doc)) == doc);
        CHECK(doc.back() == '\n');
    }
}
