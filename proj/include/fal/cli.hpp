#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fal::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomainError = 1;
inline constexpr int kExitUsageError = 2;

// Runs `fal-spectrum` with `args` (program name excluded). Data goes to `out`
// (or the --output file), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fal::cli
