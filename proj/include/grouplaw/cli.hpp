#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace grouplaw {

// Run the command-line tool on the given arguments (program name excluded),
// writing normal output to `out` and single-line JSON error objects to
// `err`. Exit codes: 0 success (verified / holds / obstructed), 1 a
// verification or check failed, 2 bad input, 3 a cap was exceeded, 4 an
// internal self-check failed.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace grouplaw
