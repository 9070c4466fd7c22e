#pragma once

// The sskit command line, callable in-process.
//
// Exit codes: 0 pass, 1 check failure, 2 usage or parse error.

#include <iosfwd>
#include <string>
#include <vector>

namespace sskit::cli {

inline constexpr int kPass = 0;
inline constexpr int kFail = 1;
inline constexpr int kUsage = 2;

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sskit::cli
