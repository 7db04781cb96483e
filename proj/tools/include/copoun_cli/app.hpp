#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace copoun::cli {

inline constexpr int kExitSuccess = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitNonConvergence = 2;

/// Runs the command line `args` (without the program name). Results go to
/// `out` unless --out is given; errors and, when no file target exists, the
/// run manifest go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace copoun::cli
