#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace splitlab::cli {

/// Exit codes: 0 success, 1 verification failure, 2 usage or parse error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitUsage = 2;

int run(int argc, char** argv, std::ostream& out, std::ostream& err);

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace splitlab::cli
