#ifndef PM4COVER_CLI_HPP
#define PM4COVER_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace pm4cover {

// Exit codes: 0 success, 1 invalid input, 2 internal proof-step violation,
// 3 negative verdict (e.g. a graph that four matchings cannot cover).
int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace pm4cover

#endif
