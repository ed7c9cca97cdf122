#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mahler::cli {

inline constexpr int kOk = 0;
inline constexpr int kUsage = 2;
inline constexpr int kMalformed = 3;
inline constexpr int kInternal = 4;

/// Runs one invocation; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace mahler::cli
