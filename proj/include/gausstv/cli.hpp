#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gausstv {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalidInput = 2;
inline constexpr int kExitNumerical = 3;

/// Runs the command line `args` (program name first) against the given
/// streams and returns the process exit code.
int cli_main(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
             std::ostream& err);

}  // namespace gausstv
