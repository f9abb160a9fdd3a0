#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace modsign::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitTolerance = 1;
inline constexpr int kExitUsage = 2;

/// Runs one subcommand. args excludes the program name. Returns 0 on success
/// or within tolerance, 1 on a tolerance failure, 2 on usage or validation errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace modsign::cli
