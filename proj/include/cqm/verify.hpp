#pragma once

// The acceptance suite: sixteen numbered criteria checked against the
// published values held in a golden JSON file.

#include <optional>
#include <string>
#include <vector>

#include "cqm/numerics.hpp"

namespace cqm::verify {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
};

struct VerifyOptions {
  std::string golden_path;  ///< empty: the built-in copy
  /// Numerical tolerance override. It can only tighten the defaults; each
  /// criterion keeps its own pass threshold.
  std::optional<numerics::Tolerance> tolerance;
};

struct VerifyReport {
  std::vector<CriterionResult> criteria;
  bool all_pass() const;
  int passed() const;
  /// One line per criterion and a summary line; no timing or addresses.
  std::string render() const;
};

/// Runs criteria 1-15, then criterion 16 (two further runs compared byte for byte).
VerifyReport run_verify(const VerifyOptions& options = {});

/// Built-in golden values (the contents of data/published_values.json).
const std::string& builtin_golden();

/// Tighter of the two tolerances, field by field.
numerics::Tolerance tighten(const numerics::Tolerance& base, const std::optional<numerics::Tolerance>& override_tol);

}  // namespace cqm::verify
