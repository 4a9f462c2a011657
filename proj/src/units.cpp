#include "cqm/units.hpp"

#include <cmath>
#include <stdexcept>

namespace cqm::units {

double omega_per_second(double curvature_ratio_per_m2) {
  if (!(curvature_ratio_per_m2 > 0.0)) throw std::domain_error("omega: curvature ratio must be > 0");
  return kSpeedOfLight * std::sqrt(curvature_ratio_per_m2);
}

double photon_energy_GeV(double omega_per_s) { return kHbarGeVSeconds * omega_per_s; }

double coulomb_energy_MeV(double value_e2_per_metre) { return value_e2_per_metre * kCoulombMeVMetres; }

}  // namespace cqm::units
