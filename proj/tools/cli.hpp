// Command dispatch for the kstar binary, kept in a library so tests can
// drive it with in-memory streams.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kstar::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;

// args excludes the program name.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kstar::cli
