#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace infoaccess {

inline constexpr const char* kToolVersion = "1.0.0";

/// Exit codes: 0 success, 1 runtime failure (I/O, caps), 2 invalid configuration.
int run_cli(int argc, const char* const* argv);

/// Convenience for tests: args excludes the program name.
int run_cli(const std::vector<std::string>& args);

}  // namespace infoaccess
