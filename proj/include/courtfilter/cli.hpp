#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace courtfilter::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kUsageError = 2;
inline constexpr int kParseError = 3;
inline constexpr int kContractError = 4;
inline constexpr int kTuningError = 5;

/// Runs one subcommand (filter / label / tune / simulate / evaluate).
/// args excludes the program name. Returns an exit code.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace courtfilter::cli
