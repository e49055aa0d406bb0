#pragma once

// The `spaceform` command line. Exit codes: 0 success, 1 a check failed,
// 2 usage or input error.

#include <iosfwd>
#include <string>
#include <vector>

namespace spaceform::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace spaceform::cli
