#ifndef PM4COVER_TEST_FIXTURES_HPP
#define PM4COVER_TEST_FIXTURES_HPP

#include "pm4cover/graph_level.hpp"
#include "pm4cover/pole.hpp"

namespace pm4cover::fixtures {

// smallest pole: triangle with three spokes
inline ThreePole t3() { return validate_pole(3, {0, 1, 2}, {}); }

// chord-rich 9-vertex pole with even segments of length 4
inline ThreePole b9() { return validate_pole(9, {0, 8, 4}, {{1, 6}, {2, 7}, {3, 5}}); }

// length-2 even segments, single crossing chord
inline ThreePole p5() { return validate_pole(5, {0, 4, 2}, {{1, 3}}); }

// all-odd profile with two chords
inline ThreePole a7() { return validate_pole(7, {0, 3, 6}, {{1, 4}, {2, 5}}); }

// unique exterior chord on the first even segment
inline ThreePole p11() {
    return validate_pole(11, {0, 8, 4}, {{1, 3}, {2, 9}, {5, 7}, {6, 10}});
}

// chord-rich with a length-6 segment; shortening it front-first succeeds
inline ThreePole i11() {
    return validate_pole(11, {0, 10, 6}, {{1, 5}, {2, 9}, {3, 8}, {4, 7}});
}

// chord-rich 13-vertex pole whose chord/matching components contain a circuit
inline ThreePole circuit13() {
    return validate_pole(13, {0, 8, 4}, {{1, 5}, {2, 6}, {3, 7}, {9, 10}, {11, 12}});
}

// chord-rich 13-vertex pole with a path joining the middle and an outer
// inner vertex of the first even segment
inline ThreePole shortcut13() {
    return validate_pole(13, {0, 8, 4}, {{1, 9}, {2, 10}, {3, 5}, {6, 11}, {7, 12}});
}

// length-6 segment; the shortened pole's circuit runs through the bridging
// chord, so the lift grows it by two edges
inline ThreePole lift13() {
    return validate_pole(13, {0, 10, 6}, {{1, 11}, {2, 12}, {3, 7}, {4, 8}, {5, 9}});
}

// both even segments have a single exterior chord (not chord-rich)
inline ThreePole sparse9() { return validate_pole(9, {0, 8, 4}, {{1, 3}, {2, 6}, {5, 7}}); }

inline CubicGraph petersen() {
    return CubicGraph::create(10, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0},
                                   {5, 7}, {7, 9}, {9, 6}, {6, 8}, {8, 5},
                                   {0, 5}, {1, 6}, {2, 7}, {3, 8}, {4, 9}});
}

inline CubicGraph k4() {
    return CubicGraph::create(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
}

} // namespace pm4cover::fixtures

#endif
