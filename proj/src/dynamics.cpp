#include "cqm/dynamics.hpp"

#include <cmath>
#include <sstream>

#include "cqm/units.hpp"

namespace cqm::dynamics {

namespace {

std::string with_value(const char* what, double v) {
  std::ostringstream os;
  os.precision(17);
  os << what << " (" << v << ")";
  return os.str();
}

}  // namespace

NonPositiveCurvature::NonPositiveCurvature(double curvature)
    : std::domain_error(with_value("shm: curvature at r_m is not positive", curvature)) {}

NonPositiveEnergy::NonPositiveEnergy(double energy)
    : std::domain_error(with_value("shm: energy (mass) at r_m is not positive", energy)) {}

OscillatorResult shm_frequency(const std::function<double(double)>& xi, double r_m,
                               const std::function<double(double)>& xi_second,
                               const numerics::Tolerance& tol) {
  if (!(r_m > 0.0)) throw std::invalid_argument("shm_frequency: r_m must be > 0");
  OscillatorResult out;
  out.r_m = r_m;
  out.xi = xi(r_m);
  out.xi_second = xi_second ? xi_second(r_m) : numerics::differentiate(xi, r_m, 2, tol, 0.05 * r_m);
  if (!(out.xi_second > 0.0)) throw NonPositiveCurvature(out.xi_second);
  if (!(out.xi > 0.0)) throw NonPositiveEnergy(out.xi);
  out.omega = std::sqrt(out.xi_second / out.xi);
  return out;
}

OscillatorResult shm_single_quark_closed_form(double n, double alpha, double lambda_over_k, double s) {
  if (!(n > 1.0)) throw std::invalid_argument("shm_single_quark_closed_form: n must be > 1");
  const double n1 = n + 1.0;
  const double n1_2 = n1 * n1;
  const double n1_3 = n1_2 * n1;
  const double n1_5 = n1_3 * n1_2;
  const double n1_7 = n1_5 * n1_2;
  const double n2 = n * n;
  const double n4 = n2 * n2;
  const double a2 = alpha * alpha;

  OscillatorResult out;
  out.r_m = n * s / alpha;
  out.xi_second = 2.0 * a2 / (s * s * s) * (n1_7 * (n2 - 2.0 * n + 3.0) * a2 + 6.0 * n4 * lambda_over_k) /
                  (n4 * n1_5);
  out.xi = (n1_7 * a2 + n2 * lambda_over_k) / (s * n2 * n1_3);
  // The ratio in its own reduced form; equal to xi_second / xi up to rounding.
  const double ratio = 2.0 * a2 * (n1_7 * (n2 - 2.0 * n + 3.0) * a2 + 6.0 * n4 * lambda_over_k) /
                       (s * s * (n1_7 * a2 + n2 * lambda_over_k) * n2 * n1_2);
  out.omega = std::sqrt(ratio);
  return out;
}

energy::EnergyFunction single_quark_energy(double alpha, double lambda_over_k, double s, double t) {
  potentials::ModelParams p;
  p.s = s;
  p.alpha = alpha;
  p.lambda_amp = lambda_over_k;
  p.k_amp = 1.0;
  p.t = t;
  p.b = 1.0;
  return energy::EnergyFunction(p, potentials::WeakPotentialShape::single_quark(),
                                potentials::single_quark_closed_form_coefficients(p), false);
}

PhysicalOscillator to_physical(const OscillatorResult& result) {
  PhysicalOscillator out;
  out.omega_per_s = units::omega_per_second(result.curvature_ratio());
  out.photon_energy_GeV = units::photon_energy_GeV(out.omega_per_s);
  return out;
}

EnergyScaleReport energy_scale_report(const potentials::ModelParams& p, double n) {
  p.validate();
  if (!(n > 0.0)) throw std::invalid_argument("energy_scale_report: n must be > 0");
  EnergyScaleReport rep;
  rep.n = n;
  rep.r = n * p.s / p.alpha;
  const double d = p.s + p.alpha * rep.r;
  const double d2 = d * d;
  rep.xi_k = p.b * p.k_amp * d2 * d2 / (p.s * p.s * p.s * rep.r * rep.r);
  rep.xi_lambda = p.b * p.lambda_amp * p.s * p.s / (d2 * d);
  rep.xi_coul = energy::coulomb_energy_closed_form(p);
  rep.xi_k_MeV = units::coulomb_energy_MeV(rep.xi_k);
  rep.xi_lambda_MeV = units::coulomb_energy_MeV(rep.xi_lambda);
  rep.xi_coul_MeV = units::coulomb_energy_MeV(rep.xi_coul);
  return rep;
}

}  // namespace cqm::dynamics
