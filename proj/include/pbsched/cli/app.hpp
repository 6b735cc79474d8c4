#pragma once

#include <iosfwd>

namespace pbsched::cli {

/// Entry point of the pbsched command-line tool.
///
/// Exit codes: 0 on success, 1 when a verify suite finds a violation or a
/// run fails, 2 for usage errors (unknown flag, malformed JSON, invalid
/// configuration).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace pbsched::cli
