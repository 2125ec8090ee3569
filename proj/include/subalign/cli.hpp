#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace subalign {

// Exit codes: 0 success, 2 invalid input or config, 3 verification or
// invariant failure, 4 enumeration cap exceeded.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitVerification = 3;
inline constexpr int kExitCapacity = 4;

/// Runs one CLI invocation. `args` excludes the program name.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace subalign
