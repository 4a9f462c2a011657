#include <doctest.h>

#include <cmath>
#include <random>

#include "cqm/potentials.hpp"

using namespace cqm::potentials;
namespace num = cqm::numerics;

namespace {

ModelParams params(double s, double alpha) {
  ModelParams p;
  p.s = s;
  p.alpha = alpha;
  return p;
}

}  // namespace

TEST_CASE("shape derivatives agree with finite differences") {
  const auto p = params(1.3, 0.6);
  for (const auto& shape : {WeakPotentialShape::single_quark(), WeakPotentialShape::two_quark(),
                            WeakPotentialShape::three_quark(0.8)}) {
    auto v = [&](double r) { return shape.evaluate(r, p.s, p.alpha).value; };
    for (double r : {0.1, 0.9, 2.7, 15.0}) {
      const auto sv = shape.evaluate(r, p.s, p.alpha);
      CHECK(num::differentiate(v, r, 1) == doctest::Approx(sv.d1).epsilon(1e-8));
      CHECK(num::differentiate(v, r, 2) == doctest::Approx(sv.d2).epsilon(1e-6));
    }
  }
}

TEST_CASE("rational shape rejects bad input") {
  CHECK_THROWS_AS(WeakPotentialShape::rational({0.0, 0.0}, 4), std::invalid_argument);
  CHECK_THROWS_AS(WeakPotentialShape::rational({0.0, 1.0}, 3), std::invalid_argument);
  CHECK_NOTHROW(WeakPotentialShape::rational({0.0, 1.0}, 4));
}

TEST_CASE("A* on the single shape equals 2 (s - alpha r) / (r (s + alpha r))") {
  const auto shape = WeakPotentialShape::single_quark();
  const auto p = params(0.7, 2.0);
  for (double x : num::geometric_grid(1e-4, 1e4, 300)) {
    const double r = p.r_of(x);
    const double closed = 2.0 * (p.s - p.alpha * r) / (r * (p.s + p.alpha * r));
    CHECK(astar(r, shape, p) == doctest::Approx(closed).epsilon(1e-10));
  }
}

TEST_CASE("single-quark closed form of phi_k") {
  auto p = params(2.0, 0.4);
  p.k_amp = 3.0;
  const auto shape = WeakPotentialShape::single_quark();
  const auto c = single_quark_closed_form_coefficients(p);
  for (double r : {0.01, 1.0, 5.0, 300.0}) {
    const double closed = p.k_amp * std::pow(p.s + p.alpha * r, 4) / (p.s * p.s * p.s * r * r);
    CHECK(phi_k(r, shape, p, c) == doctest::Approx(closed).epsilon(1e-12));
  }
  CHECK(phi_k(p.s / p.alpha, shape, p, c) == doctest::Approx(16 * p.k_amp * p.alpha * p.alpha / p.s).epsilon(1e-13));
}

TEST_CASE("flux identity d(Phi_k r^2 Psi')/dr = K s^3 Psi'") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  const auto p = params(0.9, 1.4);
  for (const auto& shape : {WeakPotentialShape::single_quark(), WeakPotentialShape::two_quark(),
                            WeakPotentialShape::three_quark(1.0)}) {
    for (int i = 0; i < 10; ++i) {
      const ConfiningCoefficients c{u(rng), u(rng), u(rng)};
      if (std::abs(c.K) < 0.05) continue;
      auto flux = [&](double r) { return phi_k_reduced(r, shape, p, c) * r * r * shape.evaluate(r, p.s, p.alpha).d1; };
      for (double r : {0.03, 0.4, 3.0, 9.0}) {
        if (near_extremum(shape, p, r, 1e-2)) continue;
        const double want = c.K * p.s * p.s * p.s * shape.evaluate(r, p.s, p.alpha).d1;
        CHECK(num::differentiate(flux, r, 1, {1e-12, 0.0, 100000}, 0.01 * r) == doctest::Approx(want).epsilon(1e-7));
      }
    }
  }
}

TEST_CASE("analytic Phi_k' matches numeric derivative") {
  const auto p = params(1.0, 1.0);
  const auto shape = WeakPotentialShape::two_quark();
  const ConfiningCoefficients c{-2.0, 0.7, 1.3};
  auto f = [&](double r) { return phi_k_reduced(r, shape, p, c); };
  for (double r : {0.05, 0.2, 0.5, 2.0, 10.0})
    CHECK(phi_k_reduced_prime(r, shape, p, c) == doctest::Approx(num::differentiate(f, r, 1)).epsilon(1e-8));
}

TEST_CASE("with K = 0, A* = -Phi_k' / Phi_k") {
  const auto p = params(1.1, 0.8);
  for (const auto& shape : {WeakPotentialShape::single_quark(), WeakPotentialShape::two_quark()}) {
    const ConfiningCoefficients c{0.0, 0.4, 1.0};
    for (double r : {0.05, 0.3, 1.7, 20.0}) {
      if (near_extremum(shape, p, r, 1e-3)) continue;
      const double ratio = -phi_k_reduced_prime(r, shape, p, c) / phi_k_reduced(r, shape, p, c);
      CHECK(astar(r, shape, p) == doctest::Approx(ratio).epsilon(1e-12));
    }
  }
}

TEST_CASE("sign rule: the C term is positive for C > 0 in every region") {
  const auto p = params(1.0, 1.0);
  const auto shape = WeakPotentialShape::three_quark(1.0);
  const ConfiningCoefficients c{0.0, 0.0, 2.0};
  for (double r : {0.2, 0.8, 1.5, 2.0, 5.0, 50.0}) {
    CHECK(phi_k_terms(r, shape, p, c).c_term > 0.0);
    CHECK(phi_k(r, shape, p, c) > 0.0);
  }
  // The P term follows the sign of Psi'.
  const ConfiningCoefficients pc{0.0, 1.0, 0.0};
  CHECK(phi_k_terms(0.5, shape, p, pc).p_term < 0.0);  // Psi' < 0 before the minimum
  CHECK(phi_k_terms(1.5, shape, p, pc).p_term > 0.0);  // Psi' > 0 between minimum and maximum
}

TEST_CASE("phi_p and its derivative") {
  auto p = params(1.0, 1.0);
  p.b = 2.0;
  CHECK(phi_p(0.0, p) == 0.0);
  CHECK(phi_p(1.0, p) == doctest::Approx(0.25));
  // Coulomb tail b / r.
  CHECK(phi_p(1e6, p) * 1e6 == doctest::Approx(p.b).epsilon(1e-5));
  auto f = [&](double r) { return phi_p(r, p); };
  for (double r : {0.3, 2.0, 7.0}) CHECK(phi_p_prime(r, p) == doctest::Approx(num::differentiate(f, r, 1)).epsilon(1e-9));
  CHECK(phi_p_prime(2.0 * p.s / p.alpha, p) == doctest::Approx(0.0));
}

TEST_CASE("region counts for the built-in shapes") {
  const auto p = params(1.0, 0.5);
  CHECK(decompose_regions(WeakPotentialShape::single_quark(), p).regions.size() == 1);
  const auto two = decompose_regions(WeakPotentialShape::two_quark(), p);
  REQUIRE(two.regions.size() == 2);
  CHECK(p.x_of(two.extrema[0]) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(two.regions[0].psi_prime_sign == 1);
  CHECK(two.regions[1].psi_prime_sign == -1);
  const double c = 1.5;
  const auto three = decompose_regions(WeakPotentialShape::three_quark(c), p);
  REQUIRE(three.regions.size() == 3);
  CHECK(three.extrema[0] == doctest::Approx(c).epsilon(1e-12));
  CHECK(three.extrema[1] == doctest::Approx((2 * p.s + 5 * p.alpha * c) / (3 * p.alpha)).epsilon(1e-12));
  CHECK(three.regions[0].psi_prime_sign == -1);
  CHECK(three.regions[1].psi_prime_sign == 1);
  CHECK(three.regions[2].psi_prime_sign == -1);
  CHECK(three.regions.front().r_lo == 0.0);
  CHECK(std::isinf(three.regions.back().r_hi));
}

TEST_CASE("a non-simple extremum is rejected") {
  const auto p = params(1.0, 1.0);
  // (r - 1)^3 / (s + alpha r)^6: Psi' has a double zero at r = 1.
  const auto shape = WeakPotentialShape::rational({-1.0, 3.0, -3.0, 1.0}, 6, "cubic");
  CHECK_THROWS_AS(decompose_regions(shape, p), DegenerateExtremum);
}

TEST_CASE("evaluation at an extremum raises ExtremumSingularity") {
  const auto p = params(1.0, 1.0);
  const auto shape = WeakPotentialShape::two_quark();
  CHECK(near_extremum(shape, p, 1.0 / 3.0));
  CHECK_THROWS_AS(astar(1.0 / 3.0, shape, p), ExtremumSingularity);
  CHECK_THROWS_AS(phi_k(1.0 / 3.0, shape, p, {}), ExtremumSingularity);
  CHECK_NOTHROW(phi_k(0.34, shape, p, {}));
}

TEST_CASE("asymptotic behaviour of the built-in shapes") {
  const auto p = params(1.0, 1.0);
  const auto single = verify_asymptotics(WeakPotentialShape::single_quark(), p, {0.0, 0.0, 1.0});
  CHECK(single.all_pass());
  const auto two = verify_asymptotics(WeakPotentialShape::two_quark(), p, {0.0, 0.5, 1.0});
  CHECK(two.origin_order == 1);
  for (const auto& cl : two.clauses) {
    INFO(cl.name << " expected " << cl.expected << " measured " << cl.measured);
    CHECK(cl.pass);
  }
  const auto three = verify_asymptotics(WeakPotentialShape::three_quark(1.0), p, {0.0, 0.0, 1.0});
  CHECK(three.all_pass());
}

TEST_CASE("external current: smooth part integrates to zero") {
  const auto p = params(1.0, 2.0);
  const double q = 1.0 / 3.0;
  auto f = [&](double r) { return 4 * M_PI * r * r * external_current_density(r, p, q).smooth; };
  CHECK(std::abs(num::integrate(f, 0.0, num::kInfinity, {1e-12, 1e-15, 1000000}, 0.5).value) <= 1e-10);
  CHECK(external_current_density(1.0, p, q).delta_weight == doctest::Approx(-2 * std::sqrt(2.0) * q));
}

TEST_CASE("curve sampling flags singular radii and is independent of jobs") {
  const auto p = params(1.0, 1.0);
  const auto shape = WeakPotentialShape::two_quark();
  GridSpec g{GridSpacing::Linear, 0.0, 1.0, 4};
  const auto rows = sample_curves(shape, p, {}, g);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].singular());  // origin
  CHECK(rows[0].phi_p == 0.0);
  CHECK(rows[1].singular());  // x = 1/3
  CHECK_FALSE(rows[2].singular());

  GridSpec big{GridSpacing::Log, 1e-3, 1e3, 517};
  const auto a = sample_curves(shape, p, {0.1, 0.2, 1.0}, big, 1);
  const auto b = sample_curves(shape, p, {0.1, 0.2, 1.0}, big, 4);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].r == b[i].r);
    CHECK(a[i].phi_k == b[i].phi_k);
    CHECK(a[i].astar == b[i].astar);
  }
}

TEST_CASE("grid and parameter validation") {
  CHECK_THROWS_AS((GridSpec{GridSpacing::Log, 0.0, 1.0, 5}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((GridSpec{GridSpacing::Linear, 2.0, 1.0, 5}.validate()), std::invalid_argument);
  CHECK_THROWS_AS(params(-1.0, 1.0).validate(), std::invalid_argument);
  CHECK_THROWS_AS(params(1.0, 0.0).validate(), std::invalid_argument);
}
