#pragma once

#include <iosfwd>

namespace psint {

// full command-line entry point: parses argv, dispatches to the library,
// writes the report to `out` (or the --out file) and diagnostics to `err`.
// returns the process exit code: 0 success, 2 validation error,
// 3 assertion failed / counterexample found
int cli_run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace psint
