#include <doctest.h>

#include "fixtures.hpp"
#include "pm4cover/instance_gen.hpp"
#include "pm4cover/pole.hpp"

using namespace pm4cover;
using namespace pm4cover::fixtures;

namespace {

ProperCover t3_cover() {
    ProperCover c;
    c.h = {label(3), label(1), label(2)};  // (0,1), (1,2), (2,0)
    c.spoke = {labels(1, 4), labels(2, 4), labels(3, 4)};
    return c;
}

} // namespace

TEST_CASE("validate_pole accepts the reference poles") {
    CHECK(t3().n == 3);
    ThreePole pole = b9();
    CHECK(pole.chords.size() == 3);
    CHECK(pole.partner[1] == 6);
    CHECK(pole.partner[5] == 3);
    CHECK(pole.spoke_index(8) == 1);
}

TEST_CASE("validate_pole rejects malformed input") {
    CHECK_THROWS_AS(validate_pole(4, {0, 1, 2}, {{3, 3}}), Error);
    try {
        validate_pole(4, {0, 1, 2}, {});
    } catch (const Error& e) {
        CHECK(e.code == Err::EvenOrder);
    }
    try {
        validate_pole(5, {0, 1, 2}, {{3, 3}});
    } catch (const Error& e) {
        CHECK(e.code == Err::LoopChord);
    }
    try {
        validate_pole(5, {0, 1, 1}, {{3, 4}});
    } catch (const Error& e) {
        CHECK(e.code == Err::SpokeClash);
    }
    try {
        validate_pole(7, {0, 1, 2}, {{3, 4}, {4, 5}});  // 4 twice, 6 uncovered
    } catch (const Error& e) {
        CHECK(e.code == Err::ChordCoverage);
    }
}

TEST_CASE("segment_profile classifies the reference poles") {
    SegmentProfile t = segment_profile(t3());
    CHECK(t.kind == ProfileKind::ThreeOdd);
    CHECK(t.seg[0].length == 1);
    CHECK(t.seg[1].length == 1);
    CHECK(t.seg[2].length == 1);
    CHECK(t.seg[0].exterior_chords == 0);

    SegmentProfile b = segment_profile(b9());
    CHECK(b.kind == ProfileKind::TwoEvenOneOdd);
    CHECK(b.seg[0].from_pos == 0);
    CHECK(b.seg[0].to_pos == 4);
    CHECK(b.seg[0].length == 4);
    CHECK(b.seg[0].exterior_chords == 3);
    CHECK(b.seg[1].from_pos == 8);
    CHECK(b.seg[1].length == 4);
    CHECK(b.seg[1].exterior_chords == 3);
    CHECK(b.seg[2].length == 1);
    CHECK(b.seg[2].exterior_chords == 0);
    CHECK(b.rich());

    SegmentProfile p = segment_profile(p5());
    CHECK(p.kind == ProfileKind::TwoEvenOneOdd);
    CHECK(p.seg[0].length == 2);
    CHECK(p.seg[1].length == 2);
    CHECK(p.seg[2].length == 1);
    CHECK(p.seg[0].exterior_chords == 1);
    CHECK(p.seg[1].exterior_chords == 1);
}

TEST_CASE("segment parity holds over exhaustive small poles") {
    for (int n : {3, 5, 7, 9}) {
        for (const ThreePole& pole : enumerate_poles(n)) {
            SegmentProfile prof = segment_profile(pole);
            int evens = 0;
            for (const Segment& s : prof.seg) {
                CHECK(s.exterior_chords % 2 == (s.length - 1) % 2);
                if (s.length % 2 == 0) evens++;
                // an even segment with three or more exterior chords is long
                if (s.length % 2 == 0 && s.exterior_chords >= 3) CHECK(s.length >= 4);
            }
            CHECK((evens == 0 || evens == 2));
            CHECK(prof.seg[0].length + prof.seg[1].length + prof.seg[2].length == pole.n);
        }
    }
}

TEST_CASE("relabel moves a segment into the first even role") {
    ThreePole pole = p5();
    auto [relabelled, rel] = relabel_to_e1(pole, 1);
    SegmentProfile prof = segment_profile(relabelled);
    CHECK(prof.seg[0].length == 2);
    CHECK(relabelled.spokes[0] == 0);
    CHECK_THROWS_AS(relabel_to_e1(pole, 2), Error);

    // round trip through the inverse is the identity on positions
    Relabeling inv = rel.inverse();
    for (int v = 0; v < pole.n; v++) CHECK(inv.map(rel.map(v)) == v);
}

TEST_CASE("covers and circuits transport through relabelings and back") {
    ThreePole pole = b9();
    ProperCover cover;
    cover.h = {label(2), labels(1, 3), label(2), label(1), label(2),
               label(1), labels(2, 3), label(1), label(3)};
    cover.chord = {label(4), label(4), labels(3, 4)};
    cover.spoke = {labels(1, 4), labels(2, 4), labels(3, 4)};
    REQUIRE(verify_proper_cover(pole, cover).ok());

    Relabeling rel{pole.n, true, 3, {1, 2, 0}};
    ThreePole moved = apply_relabeling(pole, rel);
    ProperCover through = transport_cover(cover, pole, moved, rel);
    CHECK(verify_proper_cover(moved, through).ok());
    ProperCover back = transport_cover(through, moved, pole, rel.inverse());
    CHECK(back == cover);

    AlternatingCircuit circ;
    circ.vertices = {1, 6, 7, 2};
    circ.edges = {EdgeRef::chord(1, 6), EdgeRef::h(6, 9), EdgeRef::chord(7, 2), EdgeRef::h(1, 9)};
    REQUIRE(verify_alternating_circuit(pole, circ).ok());
    AlternatingCircuit moved_circ = transport_circuit(circ, pole, rel);
    CHECK(verify_alternating_circuit(moved, moved_circ).ok());
    AlternatingCircuit back_circ = transport_circuit(moved_circ, moved, rel.inverse());
    CHECK(back_circ == circ.canonical());
}

TEST_CASE("verify_proper_cover accepts the hand cover of the smallest pole") {
    CHECK(verify_proper_cover(t3(), t3_cover()).ok());
}

TEST_CASE("verify_proper_cover pinpoints a broken vertex") {
    ProperCover c = t3_cover();
    c.h[1] = label(3);  // now (1,2) repeats the label of (0,1)
    CoverReport report = verify_proper_cover(t3(), c);
    CHECK(!report.ok());
    bool at1 = false, at2 = false;
    for (const auto& v : report.violations) {
        if (v.kind == CoverViolation::Kind::VertexExactness && v.where == 1) at1 = true;
        if (v.kind == CoverViolation::Kind::VertexExactness && v.where == 2) at2 = true;
    }
    CHECK(at1);
    CHECK(at2);
}

TEST_CASE("single-label mutations never survive verification") {
    ThreePole pole = b9();
    ProperCover cover;
    cover.h = {label(2), labels(1, 3), label(2), label(1), label(2),
               label(1), labels(2, 3), label(1), label(3)};
    cover.chord = {label(4), label(4), labels(3, 4)};
    cover.spoke = {labels(1, 4), labels(2, 4), labels(3, 4)};
    REQUIRE(verify_proper_cover(pole, cover).ok());

    Rng64 rng(20240917);
    const LabelSet shapes[] = {label(1), label(2), label(3), label(4),
                               labels(1, 2), labels(1, 3), labels(1, 4),
                               labels(2, 3), labels(2, 4), labels(3, 4)};
    for (int trial = 0; trial < 200; trial++) {
        ProperCover mutated = cover;
        int which = rng.below(pole.n + 3 + 3);
        LabelSet fresh = shapes[rng.below(10)];
        LabelSet* slot;
        if (which < pole.n)
            slot = &mutated.h[which];
        else if (which < pole.n + 3)
            slot = &mutated.chord[which - pole.n];
        else
            slot = &mutated.spoke[which - pole.n - 3];
        if (*slot == fresh) continue;
        *slot = fresh;
        CHECK(!verify_proper_cover(pole, mutated).ok());
    }
}

TEST_CASE("verify_alternating_circuit checks alternation and membership") {
    ThreePole pole = b9();
    AlternatingCircuit good;
    good.vertices = {1, 6, 7, 2};
    good.edges = {EdgeRef::chord(1, 6), EdgeRef::h(6, 9), EdgeRef::chord(7, 2), EdgeRef::h(1, 9)};
    CHECK(verify_alternating_circuit(pole, good).ok());

    AlternatingCircuit two_chords;
    two_chords.vertices = {1, 6, 7, 2};
    two_chords.edges = {EdgeRef::chord(1, 6), EdgeRef::chord(7, 2), EdgeRef::chord(1, 6),
                        EdgeRef::h(1, 9)};
    CHECK(!verify_alternating_circuit(pole, two_chords).ok());

    AlternatingCircuit with_spoke;
    with_spoke.vertices = {0, 1};
    with_spoke.edges = {EdgeRef::spoke(0), EdgeRef::h(0, 3)};
    CHECK(!verify_alternating_circuit(t3(), with_spoke).ok());

    AlternatingCircuit missing_chord;
    missing_chord.vertices = {1, 5, 6, 2};
    missing_chord.edges = {EdgeRef::chord(1, 5), EdgeRef::h(5, 9), EdgeRef::chord(6, 2),
                           EdgeRef::h(1, 9)};
    CHECK(!verify_alternating_circuit(pole, missing_chord).ok());
}

TEST_CASE("canonical circuit form is rotation and reflection invariant") {
    ThreePole pole = b9();
    AlternatingCircuit circ;
    circ.vertices = {1, 6, 7, 2};
    circ.edges = {EdgeRef::chord(1, 6), EdgeRef::h(6, 9), EdgeRef::chord(7, 2), EdgeRef::h(1, 9)};
    AlternatingCircuit rotated;
    rotated.vertices = {7, 2, 1, 6};
    rotated.edges = {EdgeRef::chord(7, 2), EdgeRef::h(1, 9), EdgeRef::chord(1, 6), EdgeRef::h(6, 9)};
    AlternatingCircuit reflected;
    reflected.vertices = {2, 7, 6, 1};
    reflected.edges = {EdgeRef::chord(7, 2), EdgeRef::h(6, 9), EdgeRef::chord(1, 6),
                       EdgeRef::h(1, 9)};
    CHECK(circ.canonical() == rotated.canonical());
    CHECK(circ.canonical() == reflected.canonical());
    CHECK(circ.canonical().vertices.front() == 1);
    CHECK(circ.canonical().edges.front().kind == EdgeKind::Chord);
}
