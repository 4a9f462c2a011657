#pragma once

// Conversion from the model's natural units (e = c = 1, lengths in metres
// unless stated otherwise) to SI and particle-physics energy scales. Applied
// only when reporting.

namespace cqm::units {

inline constexpr double kSpeedOfLight = 299'792'458.0;        // m / s
inline constexpr double kHbarGeVSeconds = 6.582119569e-25;    // GeV s
inline constexpr double kHbarCMeVMetres = 197.3269804e-15;    // MeV m
inline constexpr double kFineStructure = 7.2973525693e-3;
// e^2 / (4 pi eps0) expressed in MeV m.
inline constexpr double kCoulombMeVMetres = kFineStructure * kHbarCMeVMetres;

/// Angular frequency in 1/s for a curvature ratio xi'' / xi given in 1/m^2.
double omega_per_second(double curvature_ratio_per_m2);

/// hbar omega in GeV.
double photon_energy_GeV(double omega_per_s);

/// Energy of e^2 / length in MeV, for a model energy expressed in units of
/// charge^2 / length with charges in units of e and lengths in metres.
double coulomb_energy_MeV(double value_e2_per_metre);

}  // namespace cqm::units
