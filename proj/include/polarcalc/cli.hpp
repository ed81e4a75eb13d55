#pragma once

// Command-line front end: verify (run a suite), sweep (constants against
// observed ratios as p varies) and show (print a generated instance).

#include <iosfwd>
#include <string>
#include <vector>

namespace polarcalc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

/// `args` excludes the program name. POLARCALC_SEED, when set, overrides --seed.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace polarcalc::cli
