#include <doctest.h>

#include <algorithm>

#include "fixtures.hpp"
#include "pm4cover/cover_engine.hpp"
#include "pm4cover/instance_gen.hpp"
#include "pm4cover/oracle.hpp"

using namespace pm4cover;
using namespace pm4cover::fixtures;

namespace {

AlternatingCircuit make_circuit(const ThreePole& pole, std::vector<int> vertices,
                                std::vector<EdgeRef> edges) {
    AlternatingCircuit c;
    c.vertices = std::move(vertices);
    c.edges = std::move(edges);
    REQUIRE(verify_alternating_circuit(pole, c).ok());
    return c.canonical();
}

AlternatingCircuit b9_circuit() {
    return make_circuit(b9(), {1, 6, 7, 2},
                        {EdgeRef::chord(1, 6), EdgeRef::h(6, 9), EdgeRef::chord(7, 2),
                         EdgeRef::h(1, 9)});
}

ProperCover b9_cover() {
    ProperCover c;
    c.h = {label(2), labels(1, 3), label(2), label(1), label(2),
           label(1), labels(2, 3), label(1), label(3)};
    c.chord = {label(4), label(4), labels(3, 4)};  // (1,6), (2,7), (3,5)
    c.spoke = {labels(1, 4), labels(2, 4), labels(3, 4)};
    return c;
}

} // namespace

TEST_CASE("all-odd covers match the hand calculations") {
    ProperCover t = cover_three_odd(t3());
    ProperCover t_expected;
    t_expected.h = {label(3), label(1), label(2)};
    t_expected.spoke = {labels(1, 4), labels(2, 4), labels(3, 4)};
    CHECK(t == t_expected);

    ProperCover a = cover_three_odd(a7());
    ProperCover a_expected;
    a_expected.h = {label(3), labels(1, 2), label(3), label(1), labels(2, 3),
                    label(1), label(2)};
    a_expected.chord = {label(4), label(4)};
    a_expected.spoke = {labels(1, 4), labels(2, 4), labels(3, 4)};
    CHECK(a == a_expected);
    CHECK(verify_proper_cover(a7(), a).ok());

    CHECK_THROWS_AS(cover_three_odd(p5()), Error);
}

TEST_CASE("length-2 cover of the small pole is pinned") {
    std::string route;
    ProperCover cover = cover_with_len2_segment(p5(), &route);
    ProperCover expected;
    expected.h = {label(2), label(1), label(2), label(1), label(3)};
    expected.chord = {labels(3, 4)};
    expected.spoke = {labels(1, 4), labels(2, 4), labels(3, 4)};
    CHECK(cover == expected);
    CHECK(route == "backtracking");  // the 2-vertex reduction can never equalise

    CHECK_THROWS_AS(cover_with_len2_segment(b9()), Error);
}

TEST_CASE("unique-exterior reduction of the 11-vertex pole") {
    ReductionRecord rec = reduce_unique_exterior(p11());
    ThreePole expected = validate_pole(9, {0, 6, 2}, {{1, 7}, {3, 5}, {4, 8}});
    CHECK(rec.reduced == expected);
    CHECK(rec.q_pos == 1);
    CHECK(rec.u_old == 9);
    CHECK(rec.removed == std::vector<int>{1, 2, 3});

    // position map round-trips on the survivors
    for (int v = 4; v < 11; v++) CHECK(rec.old_to_new[v] >= 0);
    CHECK(rec.old_to_new[0] == 0);
    CHECK(rec.old_to_new[4] == 2);
    CHECK(rec.old_to_new[9] == 7);

    CHECK_THROWS_AS(reduce_unique_exterior(b9()), Error);     // three exterior chords
    CHECK_THROWS_AS(reduce_unique_exterior(p5()), Error);     // length 2
}

TEST_CASE("unique-exterior extension produces a proper cover of the original") {
    ReductionRecord rec = reduce_unique_exterior(p11());
    auto reduced_cover = brute_force_proper_cover(rec.reduced);
    REQUIRE(reduced_cover.has_value());
    ProperCover cover = extend_unique_exterior(*reduced_cover, rec);
    CHECK(verify_proper_cover(p11(), cover).ok());

    // both chords with an end among the removed vertices carry the spare
    // label plus matching 4
    int idx13 = p11().chord_index(1, 3);
    int idx29 = p11().chord_index(2, 9);
    CHECK(cover.chord[idx13] == cover.chord[idx29]);
    CHECK(has_label(cover.chord[idx13], 4));
    CHECK(label_count(cover.chord[idx13]) == 2);

    // corrupting the cover at q is rejected
    ProperCover bad = *reduced_cover;
    bad.h[0] = labels(1, 2);
    CHECK_THROWS_AS(extend_unique_exterior(bad, rec), Error);
}

TEST_CASE("forced alternation on a length-4 segment") {
    ReductionRecord rec = reduce_unique_exterior(p11());
    auto reduced_cover = brute_force_proper_cover(rec.reduced);
    REQUIRE(reduced_cover.has_value());
    ProperCover cover = extend_unique_exterior(*reduced_cover, rec);
    int a = label_list(reduced_cover->h[0])[0];
    int b = label_list(reduced_cover->h[1])[0];
    CHECK(cover.h[0] == label(a));
    CHECK(cover.h[1] == label(b));
    CHECK(cover.h[2] == label(a));
    CHECK(cover.h[3] == label(b));
}

TEST_CASE("suppression of the 9-vertex circuit gives the 5-vertex pole") {
    SuppressionRecord rec = suppress_alternating(b9(), b9_circuit());
    CHECK(rec.reduced == p5());
    CHECK(rec.smoothed == std::vector<int>{1, 2, 6, 7});
    CHECK(rec.removed_chord_indices.size() == 2);

    // the path behind the reduced edge (0,1) is old 0-1-2-3 flagged out,in,out
    using PE = SuppressionRecord::PathEdge;
    CHECK(rec.paths[0] == std::vector<PE>{{0, false}, {1, true}, {2, false}});
    CHECK(rec.paths[1] == std::vector<PE>{{3, false}});
    CHECK(rec.paths[3] == std::vector<PE>{{5, false}, {6, true}, {7, false}});

    AlternatingCircuit with_spoke;
    with_spoke.vertices = {0, 1};
    with_spoke.edges = {EdgeRef::spoke(0), EdgeRef::h(0, 9)};
    CHECK_THROWS_AS(suppress_alternating(b9(), with_spoke), Error);
}

TEST_CASE("suppressing a two-edge circuit removes two vertices") {
    ThreePole pole = validate_pole(7, {0, 3, 5}, {{1, 2}, {4, 6}});
    AlternatingCircuit digon = make_circuit(pole, {1, 2},
                                            {EdgeRef::chord(1, 2), EdgeRef::h(1, 7)});
    SuppressionRecord rec = suppress_alternating(pole, digon);
    CHECK(rec.reduced.n == 5);
    CHECK(rec.smoothed == std::vector<int>{1, 2});
}

TEST_CASE("the end-to-end 9-vertex cover matches the hand-verified one") {
    CoverOutcome outcome = compute_proper_cover(b9());
    CHECK(outcome.cover == b9_cover());
    REQUIRE(outcome.trace.size() == 2);
    CHECK(outcome.trace[0].rule == TraceRule::Suppress);
    CHECK(outcome.trace[0].size_before == 9);
    CHECK(outcome.trace[0].size_after == 5);
    CHECK(outcome.trace[1].rule == TraceRule::Len2);
}

TEST_CASE("suppression extension rules") {
    SuppressionRecord rec = suppress_alternating(b9(), b9_circuit());
    // a cover of the reduced pole straight from the oracle
    auto reduced_cover = brute_force_proper_cover(rec.reduced);
    REQUIRE(reduced_cover.has_value());
    ProperCover cover = extend_through_suppression(*reduced_cover, rec);
    CHECK(verify_proper_cover(b9(), cover).ok());

    // single-edge paths inherit the reduced labels unchanged
    CHECK(cover.h[3] == reduced_cover->h[1]);
    CHECK(cover.h[4] == reduced_cover->h[2]);
    // doubly covered edges spread {a,b}, {c}, {a,b} over their path
    LabelSet ls = reduced_cover->h[0];
    LabelSet complement = static_cast<LabelSet>(0b0111 & ~ls);
    if (label_count(ls) == 2) {
        CHECK(cover.h[0] == ls);
        CHECK(cover.h[1] == complement);
        CHECK(cover.h[2] == ls);
    } else {
        CHECK(cover.h[0] == ls);
        CHECK(cover.h[1] == complement);
        CHECK(cover.h[2] == ls);
    }

    ProperCover junk = *reduced_cover;
    junk.h[0] = label(4);
    CHECK_THROWS_AS(extend_through_suppression(junk, rec), Error);
}

TEST_CASE("base construction on the 9-vertex pole") {
    CircuitSearch found = base_case_circuit(b9());
    CHECK(!found.fallback_used);
    CHECK(found.circuit == b9_circuit());
}

TEST_CASE("base construction returns a circuit component when one exists") {
    CircuitSearch found = base_case_circuit(circuit13());
    CHECK(!found.fallback_used);
    AlternatingCircuit expected = make_circuit(circuit13(), {9, 10},
                                               {EdgeRef::chord(9, 10), EdgeRef::h(9, 13)});
    CHECK(found.circuit == expected);
}

TEST_CASE("base construction closes a middle-to-outer path directly") {
    CircuitSearch found = base_case_circuit(shortcut13());
    CHECK(!found.fallback_used);
    AlternatingCircuit expected =
        make_circuit(shortcut13(), {1, 9, 10, 2},
                     {EdgeRef::chord(1, 9), EdgeRef::h(9, 13), EdgeRef::chord(10, 2),
                      EdgeRef::h(1, 13)});
    CHECK(found.circuit == expected);
}

TEST_CASE("base construction rejects poles outside its profile") {
    CHECK_THROWS_AS(base_case_circuit(sparse9()), Error);  // single exterior chords
    CHECK_THROWS_AS(base_case_circuit(i11()), Error);      // a segment longer than 4
    CHECK_THROWS_AS(base_case_circuit(t3()), Error);
}

TEST_CASE("window reroute handles a wandering outer path") {
    // the outer path of the first segment walks through four odd-segment
    // vertices; the plain matching ground set leaves them half-matched and
    // the corrected one yields the 8-circuit
    ThreePole pole = validate_pole(
        19, {0, 8, 4},
        {{2, 17}, {18, 6}, {7, 9}, {10, 5}, {1, 11}, {12, 15}, {16, 13}, {14, 3}});
    CircuitSearch found = base_case_circuit(pole);
    CHECK(!found.fallback_used);
    CHECK(found.note == "window reroute used the reduced matching ground set");
    CHECK(verify_alternating_circuit(pole, found.circuit).ok());
    auto all = brute_alternating_circuits(pole);
    CHECK(std::find(all.begin(), all.end(), found.circuit) != all.end());
}

TEST_CASE("induction shortens the long segment of the 11-vertex pole") {
    CircuitSearch found = induction_step(i11());
    CHECK(!found.fallback_used);
    AlternatingCircuit expected =
        make_circuit(i11(), {3, 8, 7, 4},
                     {EdgeRef::chord(3, 8), EdgeRef::h(7, 11), EdgeRef::chord(7, 4),
                      EdgeRef::h(3, 11)});
    CHECK(found.circuit == expected);
    CHECK_THROWS_AS(induction_step(b9()), Error);  // base-case territory
}

TEST_CASE("induction lifts a circuit through the bridging chord") {
    // the shortened pole's circuit runs through the inserted chord, so the
    // lift grows it by two edges
    CircuitSearch found = induction_step(lift13());
    CHECK(!found.fallback_used);
    AlternatingCircuit expected =
        make_circuit(lift13(), {1, 11, 12, 2},
                     {EdgeRef::chord(1, 11), EdgeRef::h(11, 13), EdgeRef::chord(12, 2),
                      EdgeRef::h(1, 13)});
    CHECK(found.circuit == expected);
}

TEST_CASE("circuit search requires chord-rich even segments") {
    CHECK_THROWS_AS(find_alternating_circuit(sparse9()), Error);
    CHECK_THROWS_AS(find_alternating_circuit(p11()), Error);  // unique exterior chords
    CHECK_THROWS_AS(find_alternating_circuit(t3()), Error);
}

TEST_CASE("circuit search output always validates and appears in the enumeration") {
    Rng64 rng(555);
    for (int trial = 0; trial < 40; trial++) {
        int n = 9 + 2 * rng.below(3);  // 9, 11, 13
        ThreePole pole = gen_random_pole({n, rng.next(), ProfileConstraint::RichEven, true});
        CircuitSearch found = find_alternating_circuit(pole);
        CHECK(verify_alternating_circuit(pole, found.circuit).ok());
        auto all = brute_alternating_circuits(pole);
        CHECK(std::find(all.begin(), all.end(), found.circuit) != all.end());
    }
}

TEST_CASE("suppression extension accepts arbitrary oracle covers") {
    Rng64 rng(777);
    int done = 0;
    for (int trial = 0; trial < 60 && done < 25; trial++) {
        int n = 9 + 2 * rng.below(4);  // up to 15
        ThreePole pole = gen_random_pole({n, rng.next(), ProfileConstraint::RichEven, true});
        auto circuits = brute_alternating_circuits(pole);
        if (circuits.empty()) continue;
        const AlternatingCircuit& circ = circuits[rng.below(static_cast<int>(circuits.size()))];
        SuppressionRecord rec = suppress_alternating(pole, circ);
        auto reduced_cover = brute_force_proper_cover(rec.reduced);
        REQUIRE(reduced_cover.has_value());
        ProperCover cover = extend_through_suppression(*reduced_cover, rec);
        CHECK(verify_proper_cover(pole, cover).ok());
        done++;
    }
    CHECK(done >= 25);
}

TEST_CASE("dispatcher traces") {
    CoverOutcome t = compute_proper_cover(t3());
    REQUIRE(t.trace.size() == 1);
    CHECK(t.trace[0].rule == TraceRule::ThreeOdd);

    CoverOutcome p = compute_proper_cover(p11());
    REQUIRE(p.trace.size() == 2);
    CHECK(p.trace[0].rule == TraceRule::UniqueExterior);
    CHECK(p.trace[0].size_before == 11);
    CHECK(p.trace[0].size_after == 9);
    CHECK(p.trace[1].rule == TraceRule::Len2);
}

TEST_CASE("strict progress along every trace") {
    Rng64 rng(31337);
    for (int trial = 0; trial < 30; trial++) {
        int n = 9 + 2 * rng.below(12);
        ThreePole pole = gen_random_pole({n, rng.next(), ProfileConstraint::Any, true});
        CoverOutcome outcome = compute_proper_cover(pole);
        CHECK(static_cast<int>(outcome.trace.size()) <= pole.n / 2 + 1);
        for (const TraceStep& step : outcome.trace) {
            if (step.rule == TraceRule::Suppress || step.rule == TraceRule::UniqueExterior) {
                CHECK(step.size_after < step.size_before);
                CHECK((step.size_before - step.size_after) % 2 == 0);
            } else {
                CHECK(step.size_after == step.size_before);
            }
        }
    }
}

TEST_CASE("exhaustive small poles are covered and oracle-checked") {
    for (int n : {3, 5, 7, 9}) {
        for (const ThreePole& pole : enumerate_poles(n)) {
            CoverOutcome outcome = compute_proper_cover(pole);
            CHECK(verify_proper_cover(pole, outcome.cover).ok());
            CHECK(independent_cover_check(pole, outcome.cover));
        }
    }
}
