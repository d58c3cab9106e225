#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace relmirror::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitNumericalFailure = 3;

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace relmirror::cli
