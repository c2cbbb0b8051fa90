#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace gfht::cli {

// Exit codes, also documented in --help output.
inline constexpr int kOk = 0;
inline constexpr int kUsageError = 2;
inline constexpr int kIoError = 3;
inline constexpr int kNumericError = 4;

// Full command driver; args excludes argv[0].
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gfht::cli
