#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace acrn::cli {

// Exit codes
inline constexpr int kOk = 0;
inline constexpr int kMismatch = 1;
inline constexpr int kConfigError = 2;
inline constexpr int kPrecisionExhausted = 3;

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// key = value lines; '#' starts a comment. Throws std::runtime_error on malformed lines.
std::vector<std::pair<std::string, std::string>> read_config(const std::string& path);

}  // namespace acrn::cli
