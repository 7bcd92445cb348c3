#ifndef DISAMB_CLI_H
#define DISAMB_CLI_H

#include <iosfwd>

namespace disamb {

// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;
inline constexpr int kExitInternal = 3;

// Runs one `disamb` command line. Errors are reported on `err` as a single
// "error[CATEGORY]: message" line.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace disamb

#endif  // DISAMB_CLI_H
