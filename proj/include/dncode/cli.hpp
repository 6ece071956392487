#pragma once

#include <ostream>
#include <span>
#include <string>

namespace dncode::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitCorruption = 2;

// Runs one invocation. `args` excludes the program name. Structured output
// goes to `out` (unless --out redirects it to a file), summaries to `err`.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace dncode::cli
