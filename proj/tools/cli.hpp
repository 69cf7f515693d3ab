#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace weirdfind::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kMismatch = 1;
inline constexpr int kInputError = 2;
inline constexpr int kBudget = 3;

// `args` excludes the program name. The last line written to `out` is always
// `RESULT <status> <detail>`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Printable ASCII passes through; everything else, and the backslash, is
// written as \xNN.
std::string escape_bytes(const std::string& bytes);

}  // namespace weirdfind::cli
