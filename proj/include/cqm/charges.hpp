#pragma once

// Coulomb-charge spectrum fixed by the static null condition, plus the
// integrated source totals of the asymptotic solution.

#include <stdexcept>
#include <vector>

namespace cqm::charges {

/// Sign choice in b^2 -/+ q b - gamma^2 q^2 / 2 = 0.
enum class Branch { Minus, Plus };

const char* to_string(Branch b) noexcept;

/// gamma == 1 merges the indicial pair into a logarithmic branch that this
/// library does not model.
class LogarithmicBranch : public std::domain_error {
 public:
  LogarithmicBranch();
};

/// Seed charge q, signed exponent gamma (< 0 for confinement) and branch.
struct ChargeProblem {
  double q = 1.0 / 3.0;
  double gamma = -2.0;
  Branch branch = Branch::Minus;

  /// Rejects q == 0, non-finite values, and gamma == 1.
  void validate() const;
};

struct ChargeRoots {
  double b_plus = 0.0;   ///< root with +sqrt(1 + 2 gamma^2)
  double b_minus = 0.0;  ///< root with -sqrt(1 + 2 gamma^2)
};

/// Both roots of the branch's quadratic. For the minus branch
/// b(+/-) = q [1 +/- sqrt(1 + 2 gamma^2)] / 2; the plus branch is its negation.
ChargeRoots solve_coulomb_charge(const ChargeProblem& p);

/// Quadratic residual b^2 -/+ q b - gamma^2 q^2 / 2 for the given branch.
double charge_quadratic(double b, double q, double gamma_sq, Branch branch);

struct ChargeRow {
  double q = 0.0;
  Branch branch = Branch::Minus;
  ChargeRoots roots;
};

/// Roots for every q and both branches (minus first), in input order.
/// gamma_sq = gamma^2 must be >= 0; the gamma == 1 case is not rejected
/// here since only gamma^2 is known.
std::vector<ChargeRow> enumerate_fractional_charges(double gamma_sq,
                                                    const std::vector<double>& q_values);

/// Total external charge (1 - gamma) b.
double external_charge_total(double b, double gamma);

/// Total external 3-current -gamma^2 q / sqrt 2.
double external_current_total(double q, double gamma);

/// -E^2 + q^-2 (A^2 - phi^2)^2 for the asymptotic static fields
/// E = b/r^2, phi = b/r, A = gamma q / (sqrt 2 r).
double null_residual(double r, double b, double q, double gamma);

}  // namespace cqm::charges
