#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace spectrum::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 2;
inline constexpr int exit_input = 3;

/// args excludes the program name. Subcommands: check, distinguish, eval, report, beta, normalize, laws.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace spectrum::cli
