#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace surfcap::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

/// Entry point shared by main() and the tests. args excludes the program
/// name. Results go to `out` unless --output is given; diagnostics and
/// error JSON go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace surfcap::cli
