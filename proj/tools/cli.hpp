#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ssg::cli {

// Dispatches one CLI invocation. Machine-readable JSON goes to `out` with
// --json (and for --emit targets); human summaries otherwise; progress and
// diagnostics go to `err`. Exit codes: 0 success, 2 validation failure,
// 3 verification failure, 4 budget exceeded.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ssg::cli
