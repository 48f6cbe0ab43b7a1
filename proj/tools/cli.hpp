#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace padictree::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kFalse = 1;    // checked and false (not isomorphic, mismatch, invalid)
inline constexpr int kUsage = 2;    // usage or input error
inline constexpr int kUnknown = 3;  // Unknown lift statuses present

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace padictree::cli
