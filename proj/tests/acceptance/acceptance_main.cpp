// Acceptance gate: runs all sixteen criteria and prints one line for each.
// Usage: cqm_acceptance [golden.json]

#include <iostream>

#include "cqm/verify.hpp"

int main(int argc, char** argv) {
  cqm::verify::VerifyOptions options;
  if (argc > 1) options.golden_path = argv[1];
  const auto report = cqm::verify::run_verify(options);
  std::cout << report.render();
  return report.all_pass() ? 0 : 1;
}
