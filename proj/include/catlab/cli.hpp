#pragma once

// The catlab command-line interface.
//
// Exit codes: 0 success, 1 verification failure, 2 input or validation error,
// 3 numeric or budget error.

#include <ostream>
#include <string>
#include <vector>

namespace catlab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitNumeric = 3;

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace catlab::cli
