#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hellyrel {

// Exit codes: 0 success (estimates included), 1 theorem violation,
// 2 usage, configuration or guard errors.
inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitUsage = 2;

// args excludes the program name.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hellyrel
