#include <doctest.h>

#include <cmath>

#include "cqm/dynamics.hpp"
#include "cqm/units.hpp"

using namespace cqm::dynamics;

TEST_CASE("harmonic well: omega = sqrt(xi'' / xi)") {
  auto xi = [](double r) { return 2.0 + 4.5 * (r - 1.0) * (r - 1.0); };
  const auto res = shm_frequency(xi, 1.0);
  CHECK(res.xi == doctest::Approx(2.0));
  CHECK(res.xi_second == doctest::Approx(9.0).epsilon(1e-9));
  CHECK(res.omega == doctest::Approx(std::sqrt(4.5)).epsilon(1e-9));
  const auto given = shm_frequency(xi, 1.0, [](double) { return 9.0; });
  CHECK(given.omega == doctest::Approx(std::sqrt(4.5)));
}

TEST_CASE("non-positive curvature or energy is rejected") {
  CHECK_THROWS_AS(shm_frequency([](double r) { return 1.0 - r * r; }, 1.0), NonPositiveCurvature);
  CHECK_THROWS_AS(shm_frequency([](double r) { return -5.0 + (r - 1) * (r - 1); }, 1.0), NonPositiveEnergy);
  CHECK_THROWS_AS(shm_frequency([](double r) { return r; }, 0.0), std::invalid_argument);
}

TEST_CASE("closed form agrees with numeric curvature of the single-quark energy") {
  for (auto [alpha, lk, s] : {std::tuple{1e-3, 1e-3, 1e-19}, std::tuple{1e-2, 1.0, 1e-18}, std::tuple{0.3, 2.0, 1.0}}) {
    const double n = 12.6;
    const auto closed = shm_single_quark_closed_form(n, alpha, lk, s);
    const auto xi = single_quark_energy(alpha, lk, s);
    CHECK(xi(closed.r_m) == doctest::Approx(closed.xi).epsilon(1e-12));
    const auto numeric = shm_frequency(std::cref(xi), closed.r_m);
    CHECK(numeric.xi_second == doctest::Approx(closed.xi_second).epsilon(1e-7));
    CHECK(numeric.omega == doctest::Approx(closed.omega).epsilon(1e-7));
    CHECK(closed.curvature_ratio() == doctest::Approx(closed.omega * closed.omega).epsilon(1e-12));
  }
}

TEST_CASE("physical conversion") {
  OscillatorResult r;
  r.xi = 1.0;
  r.xi_second = 4.0;  // omega = 2 per metre
  const auto phys = to_physical(r);
  CHECK(phys.omega_per_s == doctest::Approx(2.0 * cqm::units::kSpeedOfLight));
  CHECK(phys.photon_energy_GeV == doctest::Approx(2.0 * cqm::units::kSpeedOfLight * cqm::units::kHbarGeVSeconds));
}

TEST_CASE("light-case oscillator scale") {
  const auto closed = shm_single_quark_closed_form(12.6, 1e-3, 1e-3, 1e-19);
  const auto phys = to_physical(closed);
  const double reduced = phys.omega_per_s * 1e-19 / (cqm::units::kSpeedOfLight * 1e-3);
  CHECK(reduced == doctest::Approx(0.097).epsilon(1e-2));
  CHECK(phys.photon_energy_GeV == doctest::Approx(0.191).epsilon(1e-2));
  CHECK(closed.r_m == doctest::Approx(1.26e-15));
}

TEST_CASE("energy scale report") {
  cqm::potentials::ModelParams p;
  p.alpha = 1e-3;
  p.lambda_amp = 1e-3;
  const double n = 12.6;
  const auto rep = energy_scale_report(p, n);
  CHECK(rep.r == doctest::Approx(n / p.alpha));
  CHECK(rep.xi_k == doctest::Approx(p.alpha * p.alpha * std::pow(n + 1, 4) / (n * n)).epsilon(1e-12));
  CHECK(rep.xi_lambda == doctest::Approx(p.lambda_amp / std::pow(n + 1, 3)).epsilon(1e-12));
  CHECK(rep.xi_coul == doctest::Approx(3.0 * p.alpha / 70.0));
  CHECK(rep.lambda_to_k_ratio() == doctest::Approx(rep.xi_lambda / rep.xi_k));
  CHECK(rep.xi_k_MeV == doctest::Approx(rep.xi_k * cqm::units::kCoulombMeVMetres));
}

TEST_CASE("unit constants") {
  CHECK(cqm::units::kCoulombMeVMetres == doctest::Approx(1.439964e-15).epsilon(1e-6));
  CHECK_THROWS_AS(cqm::units::omega_per_second(-1.0), std::domain_error);
}
