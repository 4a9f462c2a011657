#include "cqm/charges.hpp"

#include <cmath>

namespace cqm::charges {

const char* to_string(Branch b) noexcept {
  return b == Branch::Minus ? "minus" : "plus";
}

LogarithmicBranch::LogarithmicBranch()
    : std::domain_error("gamma = 1 selects the logarithmic branch, which is not supported") {}

void ChargeProblem::validate() const {
  if (!std::isfinite(q) || q == 0.0)
    throw std::invalid_argument("charge problem: q must be finite and non-zero");
  if (!std::isfinite(gamma))
    throw std::invalid_argument("charge problem: gamma must be finite");
  if (gamma == 1.0) throw LogarithmicBranch();
}

ChargeRoots solve_coulomb_charge(const ChargeProblem& p) {
  p.validate();
  const double radical = std::sqrt(1.0 + 2.0 * p.gamma * p.gamma);
  ChargeRoots roots{0.5 * p.q * (1.0 + radical), 0.5 * p.q * (1.0 - radical)};
  if (p.branch == Branch::Plus) {
    roots.b_plus = -roots.b_plus;
    roots.b_minus = -roots.b_minus;
  }
  return roots;
}

double charge_quadratic(double b, double q, double gamma_sq, Branch branch) {
  const double linear = branch == Branch::Minus ? -q * b : q * b;
  return b * b + linear - 0.5 * gamma_sq * q * q;
}

std::vector<ChargeRow> enumerate_fractional_charges(double gamma_sq,
                                                    const std::vector<double>& q_values) {
  if (!(gamma_sq >= 0.0) || !std::isfinite(gamma_sq))
    throw std::invalid_argument("gamma^2 must be finite and >= 0");
  const double radical = std::sqrt(1.0 + 2.0 * gamma_sq);
  std::vector<ChargeRow> rows;
  rows.reserve(2 * q_values.size());
  for (double q : q_values) {
    if (!std::isfinite(q)) throw std::invalid_argument("q must be finite");
    const ChargeRoots minus{0.5 * q * (1.0 + radical), 0.5 * q * (1.0 - radical)};
    rows.push_back({q, Branch::Minus, minus});
    rows.push_back({q, Branch::Plus, {-minus.b_plus, -minus.b_minus}});
  }
  return rows;
}

double external_charge_total(double b, double gamma) { return (1.0 - gamma) * b; }

double external_current_total(double q, double gamma) {
  return -gamma * gamma * q / std::sqrt(2.0);
}

double null_residual(double r, double b, double q, double gamma) {
  if (!(r > 0.0)) throw std::invalid_argument("null_residual: r must be > 0");
  if (q == 0.0) throw std::invalid_argument("null_residual: q must be non-zero");
  const double field = b / (r * r);
  const double phi = b / r;
  const double a = gamma * q / (std::sqrt(2.0) * r);
  const double bracket = a * a - phi * phi;
  return -field * field + bracket * bracket / (q * q);
}

}  // namespace cqm::charges
