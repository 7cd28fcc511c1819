#ifndef MLPLAN_COMMANDS_H_
#define MLPLAN_COMMANDS_H_

#include <ostream>

namespace mlplan {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitUnserved = 3;

// Entry point of the `mlplan` tool: subcommands plan, sweep, render, serve
// and generate. Returns the process exit code.
int RunCli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mlplan

#endif  // MLPLAN_COMMANDS_H_
