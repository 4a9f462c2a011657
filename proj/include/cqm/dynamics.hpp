#pragma once

// Small radial oscillations about an energy minimum.

#include <functional>
#include <stdexcept>

#include "cqm/energy.hpp"
#include "cqm/numerics.hpp"

namespace cqm::dynamics {

class NonPositiveCurvature : public std::domain_error {
 public:
  explicit NonPositiveCurvature(double curvature);
};

class NonPositiveEnergy : public std::domain_error {
 public:
  explicit NonPositiveEnergy(double energy);
};

/// Oscillator at r_m in model units (c = 1): mass = xi(r_m), omega in 1/length.
struct OscillatorResult {
  double r_m = 0.0;
  double xi = 0.0;
  double xi_second = 0.0;
  double omega = 0.0;

  double mass() const { return xi; }
  double curvature_ratio() const { return xi_second / xi; }
};

/// omega = sqrt(xi''(r_m) / xi(r_m)). xi'' comes from `xi_second` when
/// given, otherwise from Richardson-extrapolated central differences.
/// r_m is assumed to be an interior minimum; only the signs of xi and xi''
/// are checked.
OscillatorResult shm_frequency(const std::function<double(double)>& xi, double r_m,
                               const std::function<double(double)>& xi_second = nullptr,
                               const numerics::Tolerance& tol = {1e-12, 0.0, 1000000});

/// Closed-form single-quark oscillator at r_m = n s / alpha, per unit b k.
OscillatorResult shm_single_quark_closed_form(double n, double alpha, double lambda_over_k, double s);

/// The single-quark energy b [k (s + alpha r)^4 / (s^3 r^2) + lambda s^2 / (s + alpha r)^3]
/// with b = k = 1, lambda = lambda_over_k, Coulomb term left out.
energy::EnergyFunction single_quark_energy(double alpha, double lambda_over_k, double s, double t = 0.0);

/// Physical frequency and photon energy, with lengths of `result` in metres.
struct PhysicalOscillator {
  double omega_per_s = 0.0;
  double photon_energy_GeV = 0.0;
};
PhysicalOscillator to_physical(const OscillatorResult& result);

/// Interaction and Coulomb energies at r = n s / alpha using the
/// single-quark closed forms; amplitudes in units of e, s in metres.
struct EnergyScaleReport {
  double n = 0.0;
  double r = 0.0;
  double xi_k = 0.0;
  double xi_lambda = 0.0;
  double xi_coul = 0.0;
  double xi_k_MeV = 0.0;
  double xi_lambda_MeV = 0.0;
  double xi_coul_MeV = 0.0;
  double lambda_to_k_ratio() const { return xi_lambda / xi_k; }
};
EnergyScaleReport energy_scale_report(const potentials::ModelParams& p, double n);

}  // namespace cqm::dynamics
