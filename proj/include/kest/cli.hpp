#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kest {

// Exit codes: 0 success, 1 runtime/validation error, 2 bad command line, 3 a certification failed.
inline constexpr int kExitError = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitUncertified = 3;

// args excludes the program name. Output directory: KEST_OUT_DIR, else --out-dir, else ".".
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kest
