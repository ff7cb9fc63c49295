#pragma once

namespace dirac2d::cli {

// Parses argv, dispatches to the subcommand, writes outputs + manifest.
// Returns 0 on success, 1 on configuration errors, 2 on numerical failures.
int run(int argc, const char* const* argv);

}  // namespace dirac2d::cli
