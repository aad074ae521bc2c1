#ifndef PM4COVER_GRAPH_IO_HPP
#define PM4COVER_GRAPH_IO_HPP

#include <string>
#include <vector>

#include "pm4cover/cover_engine.hpp"
#include "pm4cover/graph_level.hpp"
#include "pm4cover/pole.hpp"

namespace pm4cover {

// Canonical JSON, one line, newline-terminated: equal values give equal bytes.
std::string serialize_pole(const ThreePole& pole);
ThreePole parse_pole(const std::string& text);  // SyntaxError / ValidationError

struct CoverDocument {
    ThreePole pole;
    ProperCover cover;
    std::vector<TraceStep> trace;
    bool proper = false;
};

std::string serialize_cover(const ThreePole& pole, const ProperCover& cover,
                            const std::vector<TraceStep>& trace);
CoverDocument parse_cover(const std::string& text);

// graph6 per the published byte-level format; simple graphs only.
std::string serialize_graph6(const CubicGraph& g);
CubicGraph parse_graph6_cubic(const std::string& text);         // DegreeError downstream
std::pair<int, std::vector<std::pair<int, int>>> parse_graph6(const std::string& text);

// two-factor annotation: the two circuits as vertex cycles
std::string serialize_two_factor(const TwoFactorSplit& split);
TwoFactorSplit parse_two_factor(const CubicGraph& g, const std::string& text);

// four-matching certificate for a covered cubic graph
std::string serialize_graph_cover(const CubicGraph& g, const GraphCoverCertificate& cert);

} // namespace pm4cover

#endif
