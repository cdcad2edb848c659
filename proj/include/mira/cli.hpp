#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace mira::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kDataError = 1;
inline constexpr int kQueryError = 2;

// `args` includes the program name. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mira::cli
