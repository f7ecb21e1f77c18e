#pragma once

// The vna command-line tool as a callable function.
//
// Exit codes: 0 success, 1 implementation failure flagged in a report,
// 2 malformed input or mismatched shapes, 3 input outside an operation's
// domain or a numerical breakdown, 4 a configured cap was exceeded.

#include <iosfwd>
#include <string>
#include <vector>

namespace vna {

/// `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace vna
