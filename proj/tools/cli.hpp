#ifndef SPX_TOOLS_CLI_HPP
#define SPX_TOOLS_CLI_HPP

#include <ostream>

namespace spx::cli {

/// Runs the spx command line. Returns 0 on success, 1 on a run-time or solve
/// failure and 2 on a usage error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace spx::cli

#endif
