#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "cqm/numerics.hpp"

using namespace cqm::numerics;

TEST_CASE("semi-infinite rational integrals match exact fractions") {
  // The Coulomb and mass cross integrals of the model in reduced form.
  auto coul = [](double r) { return std::pow(r, 4) * (2 - r) * (2 - r) / std::pow(1 + r, 8); };
  auto cross = [](double r) { return r * r * r * (2 - r) / std::pow(1 + r, 8); };
  const auto a = integrate(coul, 0.0, kInfinity, {1e-12, 1e-15, 1000000});
  const auto b = integrate(cross, 0.0, kInfinity, {1e-12, 1e-15, 1000000});
  CHECK(a.converged);
  CHECK(a.value == doctest::Approx(3.0 / 35.0).epsilon(1e-11));
  CHECK(b.value == doctest::Approx(1.0 / 210.0).epsilon(1e-11));
  CHECK(a.abs_error <= 1e-10);
}

TEST_CASE("finite interval and endpoint singularity") {
  CHECK(integrate([](double x) { return std::sin(x); }, 0.0, M_PI).value == doctest::Approx(2.0).epsilon(1e-12));
  // 1/sqrt(x) is integrable; the endpoint itself is never sampled.
  const auto r = integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, {1e-9, 0.0, 1000000});
  CHECK(r.value == doctest::Approx(2.0).epsilon(1e-7));
}

TEST_CASE("quadrature is linear in the integrand") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  auto f = [](double r) { return 1.0 / std::pow(1 + r, 3); };
  auto g = [](double r) { return r * std::exp(-r); };
  const double If = integrate(f, 0.0, kInfinity).value;
  const double Ig = integrate(g, 0.0, kInfinity).value;
  for (int i = 0; i < 10; ++i) {
    const double a = u(rng), b = u(rng);
    const double I = integrate([&](double r) { return a * f(r) + b * g(r); }, 0.0, kInfinity).value;
    CHECK(I == doctest::Approx(a * If + b * Ig).epsilon(1e-9));
  }
}

TEST_CASE("scale only changes cost, not the value") {
  auto f = [](double r) { return std::pow(r, 4) * (2 - r) * (2 - r) / std::pow(1 + r, 8); };
  for (double scale : {0.01, 1.0, 100.0})
    CHECK(integrate(f, 0.0, kInfinity, {1e-11, 1e-15, 1000000}, scale).value ==
          doctest::Approx(3.0 / 35.0).epsilon(1e-9));
}

TEST_CASE("non-finite integrand samples are reported") {
  auto bad = [](double r) { return r > 0.5 ? std::numeric_limits<double>::quiet_NaN() : 1.0; };
  CHECK_THROWS_AS(integrate(bad, 0.0, 1.0), NonFiniteSample);
}

TEST_CASE("budget exhaustion flags non-convergence") {
  const auto r = integrate([](double x) { return std::sin(1.0 / x); }, 0.0, 1.0, {1e-14, 0.0, 200});
  CHECK_FALSE(r.converged);
}

TEST_CASE("tolerance validation") {
  CHECK_THROWS_AS((Tolerance{0.0, 0.0, 10}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((Tolerance{1e-8, -1.0, 10}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((Tolerance{1e-8, 0.0, 0}.validate()), std::invalid_argument);
  CHECK_NOTHROW(Tolerance{}.validate());
}

TEST_CASE("Brent root finding") {
  CHECK(find_root([](double x) { return x * x - 2.0; }, 0.0, 2.0, {1e-15, 0.0, 1000}) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(find_root([](double x) { return std::cos(x) - x; }, 0.0, 1.0) ==
        doctest::Approx(0.7390851332151607).epsilon(1e-12));
  CHECK(find_root([](double x) { return x - 3.0; }, 3.0, 5.0) == 3.0);
  CHECK_THROWS_AS(find_root([](double x) { return x * x + 1.0; }, -1.0, 1.0), NoSignChange);
}

TEST_CASE("Brent minimization") {
  const auto m = minimize_scalar([](double x) { return (x - 1.0) * (x - 1.0) + 3.0; }, 0.0, 3.0);
  CHECK(m.x == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(m.value == doctest::Approx(3.0));
  CHECK_FALSE(m.at_boundary);
  const auto edge = minimize_scalar([](double x) { return x; }, 0.0, 1.0);
  CHECK(edge.at_boundary);
}

TEST_CASE("Richardson differentiation") {
  auto f = [](double x) { return std::sin(x); };
  CHECK(differentiate(f, 1.0, 1) == doctest::Approx(std::cos(1.0)).epsilon(1e-10));
  CHECK(differentiate(f, 1.0, 2) == doctest::Approx(-std::sin(1.0)).epsilon(1e-8));
  auto g = [](double r) { return std::pow(1 + r, 4) / (r * r); };
  // g' = 2 (1+r)^3 (r-1) / r^3
  const double r = 2.0;
  const double d1 = 2 * std::pow(1 + r, 3) * (r - 1) / (r * r * r);
  CHECK(differentiate(g, r, 1) == doctest::Approx(d1).epsilon(1e-10));
  CHECK_THROWS_AS(differentiate(f, 1.0, 3), std::invalid_argument);
}

TEST_CASE("grids") {
  const auto lin = linear_grid(0.0, 1.0, 5);
  REQUIRE(lin.size() == 5);
  CHECK(lin.front() == 0.0);
  CHECK(lin.back() == 1.0);
  CHECK(lin[2] == doctest::Approx(0.5));
  const auto geo = geometric_grid(1e-2, 1e2, 5);
  REQUIRE(geo.size() == 5);
  CHECK(geo.front() == 1e-2);
  CHECK(geo.back() == 1e2);
  CHECK(geo[2] == doctest::Approx(1.0));
  CHECK_THROWS_AS(geometric_grid(0.0, 1.0, 3), std::invalid_argument);
}
