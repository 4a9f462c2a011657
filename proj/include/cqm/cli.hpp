#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cqm::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCriterionFailure = 1;
inline constexpr int kExitUsage = 2;

/// Runs one command line (program name excluded). Results go to `out`, or to
/// the file named by --out; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cqm::cli
