#include "cqm/energy.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <sstream>

namespace cqm::energy {

namespace {

constexpr double kThird = 1.0 / 3.0;

numerics::IntegrationResult checked(numerics::IntegrationResult r, const char* what) {
  if (!r.converged) {
    std::ostringstream os;
    os << what << ": quadrature did not converge (estimate " << r.value << ", error " << r.abs_error
       << ")";
    throw QuadratureFailure(os.str());
  }
  return r;
}

// Sample abscissae in x strictly inside (x_lo, x_hi), dense near each edge.
std::vector<double> region_samples(double x_lo, double x_hi, int points) {
  const int half = std::max(points / 2, 8);
  std::vector<double> xs;
  constexpr double kClosest = 1e-9;
  if (std::isinf(x_hi)) {
    if (x_lo == 0.0) return numerics::geometric_grid(kClosest, 1.0 / kClosest, points);
    for (double d : numerics::geometric_grid(kClosest * x_lo, x_lo, half)) xs.push_back(x_lo + d);
    for (double x : numerics::geometric_grid(2.0 * x_lo, x_lo / kClosest, half)) xs.push_back(x);
  } else {
    const double width = x_hi - x_lo;
    for (double d : numerics::geometric_grid(kClosest * width, 0.5 * width, half)) xs.push_back(x_lo + d);
    auto upper = numerics::geometric_grid(kClosest * width, 0.5 * width, half);
    std::reverse(upper.begin(), upper.end());
    for (std::size_t i = 1; i < upper.size(); ++i) xs.push_back(x_hi - upper[i]);
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  xs.erase(std::remove_if(xs.begin(), xs.end(), [&](double x) { return !(x > x_lo && x < x_hi); }),
           xs.end());
  return xs;
}

struct Sampled {
  std::vector<double> x;
  std::vector<double> value;
};

Sampled sample(const EnergyFunction& xi, const Region& region, int points) {
  const auto& p = xi.params();
  const double x_lo = p.x_of(region.r_lo);
  const double x_hi = std::isinf(region.r_hi) ? numerics::kInfinity : p.x_of(region.r_hi);
  Sampled out;
  for (double x : region_samples(x_lo, x_hi, points)) {
    try {
      const double v = xi(p.r_of(x));
      if (!std::isfinite(v)) continue;
      out.x.push_back(x);
      out.value.push_back(v);
    } catch (const potentials::ExtremumSingularity&) {
      // Sample landed on a divergence; the neighbours carry the shape.
    }
  }
  return out;
}

// Refines a stationary point of xi inside [x_a, x_b] (dimensionless).
double refine_stationary(const EnergyFunction& xi, double x_a, double x_b, bool minimum,
                         const numerics::Tolerance& tol) {
  const auto& p = xi.params();
  auto dxi = [&](double x) { return xi.derivative(p.r_of(x)); };
  const double da = dxi(x_a);
  const double db = dxi(x_b);
  if ((da < 0.0 && db > 0.0) || (da > 0.0 && db < 0.0)) return numerics::find_root(dxi, x_a, x_b, tol);
  const double sign = minimum ? 1.0 : -1.0;
  return numerics::minimize_scalar([&](double x) { return sign * xi(p.r_of(x)); }, x_a, x_b, tol).x;
}

}  // namespace

double coulomb_energy(const ModelParams& p, const numerics::Tolerance& tol) {
  p.validate();
  auto integrand = [&](double r) {
    const double d = potentials::phi_p_prime(r, p);
    return d * d * r * r;
  };
  const auto res = checked(numerics::integrate(integrand, 0.0, numerics::kInfinity, tol, p.s / p.alpha),
                           "coulomb_energy");
  return 0.5 * res.value;
}

double coulomb_energy_closed_form(const ModelParams& p) {
  return 3.0 / 70.0 * p.alpha * p.b * p.b / p.s;
}

EnergyFunction::EnergyFunction(ModelParams params, WeakPotentialShape shape, ConfiningCoefficients coeffs,
                               bool include_coulomb, const numerics::Tolerance& tol)
    : params_(params), shape_(std::move(shape)), coeffs_(coeffs) {
  params_.validate();
  coeffs_.validate();
  if (include_coulomb && params_.b != 0.0) coulomb_ = coulomb_energy(params_, tol);
}

EnergyTerms EnergyFunction::terms(double r) const {
  EnergyTerms t;
  t.coulomb = coulomb_;
  t.confining = params_.b * potentials::phi_k(r, shape_, params_, coeffs_);
  t.weak = params_.b * potentials::psi(r, shape_, params_);
  return t;
}

double EnergyFunction::derivative(double r) const {
  return params_.b * (potentials::phi_k_prime(r, shape_, params_, coeffs_) +
                      potentials::psi_prime(r, shape_, params_));
}

double total_energy(double r, const ModelParams& p, const WeakPotentialShape& shape,
                    const ConfiningCoefficients& c) {
  return EnergyFunction(p, shape, c)(r);
}

EnergyProfile profile_region(const EnergyFunction& xi, const Region& region, int points) {
  const auto& p = xi.params();
  const Sampled s = sample(xi, region, points);
  EnergyProfile profile;
  profile.region = region;
  for (std::size_t i = 0; i < s.x.size(); ++i) profile.samples.emplace_back(p.r_of(s.x[i]), s.value[i]);
  const numerics::Tolerance tol{1e-12, 0.0, 100000};
  for (std::size_t i = 1; i + 1 < s.x.size(); ++i) {
    const bool is_min = s.value[i] < s.value[i - 1] && s.value[i] <= s.value[i + 1];
    const bool is_max = s.value[i] > s.value[i - 1] && s.value[i] >= s.value[i + 1];
    if (!is_min && !is_max) continue;
    const double x = refine_stationary(xi, s.x[i - 1], s.x[i + 1], is_min, tol);
    const double r = p.r_of(x);
    profile.extrema.push_back({r, xi(r), is_min ? ExtremumKind::Minimum : ExtremumKind::Maximum});
  }
  return profile;
}

EnergyMinimum find_energy_minimum(const EnergyFunction& xi, const Region& region,
                                  const numerics::Tolerance& tol) {
  const auto& p = xi.params();
  const Sampled s = sample(xi, region, 400);
  if (s.x.size() < 3) throw NoInteriorMinimum("find_energy_minimum: region too small to sample");
  const auto lowest = std::min_element(s.value.begin(), s.value.end()) - s.value.begin();
  if (lowest == 0 || static_cast<std::size_t>(lowest) + 1 == s.x.size()) {
    std::ostringstream os;
    os << "find_energy_minimum: energy decreases toward the region edge near x = " << s.x[lowest]
       << " (partial confinement)";
    throw NoInteriorMinimum(os.str());
  }
  const double x = refine_stationary(xi, s.x[lowest - 1], s.x[lowest + 1], true, tol);
  const double r = p.r_of(x);
  return {r, x, xi(r)};
}

double single_quark_n_lhs(double n) {
  const double n1 = n + 1.0;
  const double n1_2 = n1 * n1;
  return 2.0 * n1_2 * n1_2 * n1_2 * n1 * (n - 1.0) / (n * n * n);
}

double solve_single_quark_n(double rhs, const numerics::Tolerance& tol) {
  if (!(rhs > 0.0) || !std::isfinite(rhs))
    throw std::invalid_argument("solve_single_quark_n: rhs must be finite and > 0");
  auto f = [rhs](double n) { return single_quark_n_lhs(n) - rhs; };
  double hi = 2.0;
  while (f(hi) <= 0.0) {
    hi *= 2.0;
    if (hi > 1e300) throw numerics::BudgetExhausted("solve_single_quark_n: bracket growth failed");
  }
  // f(1) = -rhs < 0 exactly.
  return numerics::find_root(f, 1.0, hi, tol);
}

UnstableParams UnstableParams::from_model(const ModelParams& p, const ConfiningCoefficients& c) {
  return {-p.alpha * c.K, p.alpha * p.alpha * (c.P - c.C), p.lambda_amp / (p.alpha * p.k_amp),
          p.s * p.s * p.s * p.lambda_amp * p.t / p.k_amp};
}

PoleAtOneThird::PoleAtOneThird() : std::domain_error("unstable energy: pole at x = 1/3") {}

double unstable_energy(double x, const UnstableParams& up) {
  if (!(x > 0.0)) throw std::invalid_argument("unstable_energy: x must be > 0");
  const double pole = 3.0 * x - 1.0;
  if (pole == 0.0) throw PoleAtOneThird();
  const double x1 = 1.0 + x;
  const double x1_4 = x1 * x1 * x1 * x1;
  return up.D * x1 / (x * pole) - up.U * x1_4 * x1 / (x * x * pole) + up.N * x / x1_4 + up.T;
}

double unstable_energy_prime(double x, const UnstableParams& up) {
  if (!(x > 0.0)) throw std::invalid_argument("unstable_energy_prime: x must be > 0");
  const double pole = 3.0 * x - 1.0;
  if (pole == 0.0) throw PoleAtOneThird();
  const double x1 = 1.0 + x;
  const double x1_4 = x1 * x1 * x1 * x1;
  const double pole2 = pole * pole;
  return up.D * (-3.0 * x * x - 6.0 * x + 1.0) / (x * x * pole2) -
         2.0 * up.U * x1_4 * (3.0 * x * x - 6.0 * x + 1.0) / (x * x * x * pole2) +
         up.N * (1.0 - 3.0 * x) / (x1_4 * x1);
}

double divergence_threshold_ratio() {
  const double r = 4.0 / 3.0;
  return 2.25 * r * r * r * r * r;
}

bool divergence_threshold(const UnstableParams& up) {
  if (!(up.U > 0.0))
    throw std::invalid_argument("divergence_threshold: U must be > 0 (no solution when C = P)");
  const double r = 4.0 / 3.0;
  return 4.0 * up.D - 9.0 * up.U * r * r * r * r * r > 0.0;
}

double solve_N_for_extremum(double D, double x_star, double U) {
  if (!(x_star > kThird)) throw std::domain_error("solve_N_for_extremum: need x > 1/3");
  const double x = x_star;
  const double denom = -3.0 * x * x - 6.0 * x + 1.0;
  if (denom == 0.0) throw std::domain_error("solve_N_for_extremum: -3x^2 - 6x + 1 = 0");
  const double x1 = 1.0 + x;
  const double x1_4 = x1 * x1 * x1 * x1;
  const double first = 2.0 * U * x1_4 * (3.0 * x * x - 6.0 * x + 1.0) / (x * denom);
  const double pole = 3.0 * x - 1.0;
  const double coefficient = pole * pole * pole * x * x / (x1_4 * x1 * denom);
  return (D - first) / coefficient;
}

UnstableRow analyze_unstable(const UnstableParams& up, int scan_points, double x_hi,
                             const numerics::Tolerance& tol) {
  if (scan_points < 3) throw std::invalid_argument("analyze_unstable: need >= 3 scan points");
  const auto xs = numerics::geometric_grid(kThird + 1e-6, x_hi, scan_points);
  std::vector<double> slope(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) slope[i] = unstable_energy_prime(xs[i], up);

  auto energy = [&](double x) { return unstable_energy(x, up); };
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    if (!(slope[i] < 0.0 && slope[i + 1] >= 0.0)) continue;
    const auto lo = numerics::minimize_scalar(energy, xs[i], xs[i + 1], tol);
    for (std::size_t j = i + 1; j + 1 < xs.size(); ++j) {
      if (!(slope[j] > 0.0 && slope[j + 1] <= 0.0)) continue;
      const auto hi = numerics::minimize_scalar([&](double x) { return -energy(x); }, xs[j], xs[j + 1], tol);
      UnstableRow row{up.D, up.N, lo.x, hi.x, lo.value, -hi.value, -hi.value - lo.value};
      // Past the barrier the well must leak: E eventually drops below E_min.
      if (!(energy(x_hi) < row.E_min && slope.back() < 0.0))
        throw NoMinMaxPair("analyze_unstable: well does not leak beyond x_max (not partially confined)");
      return row;
    }
    break;
  }
  throw NoMinMaxPair("analyze_unstable: no minimum/maximum pair on (1/3, x_hi); fully bound or unbound");
}

const char* to_string(SeedKind k) noexcept { return k == SeedKind::Maximum ? "max" : "min"; }

std::vector<Table1Entry> table1_reference() {
  return {
      {10.0, -83.4, 0.8, 1.5, -12.3, -10.8, 1.5, SeedKind::Maximum},
      {10.0, -152.0, 0.7, 2.0, -17.0, -12.9, 4.1, SeedKind::Maximum},
      {10.0, -488.0, 0.5, 3.0, -49.0, -18.3, 30.7, SeedKind::Maximum},
      {100.0, -1163.0, 2.0, 2.5, -10.93, -10.77, 0.16, SeedKind::Minimum},
      {1000.0, -10390.0, 2.3, 3.0, 29.1, 30.7, 1.6, SeedKind::Maximum},
  };
}

namespace {

SeedResult solve_seed(const Table1Entry& e, SeedKind kind) {
  SeedResult out;
  out.seed = kind;
  out.x_seed = kind == SeedKind::Maximum ? e.x_max : e.x_min;
  out.N = solve_N_for_extremum(e.D, out.x_seed);
  out.rel_err_N = (out.N - e.N) / std::abs(e.N);
  try {
    out.row = analyze_unstable({e.D, 1.0, out.N, 0.0});
    out.analyzed = true;
  } catch (const NoMinMaxPair&) {
    out.analyzed = false;
  }
  return out;
}

}  // namespace

Table1Reproduction reproduce_table1_row(const Table1Entry& entry) {
  Table1Reproduction rep;
  rep.reference = entry;
  rep.designated = solve_seed(entry, entry.seed);
  rep.alternate = solve_seed(entry, entry.seed == SeedKind::Maximum ? SeedKind::Minimum : SeedKind::Maximum);
  try {
    rep.with_reference_N = analyze_unstable({entry.D, 1.0, entry.N, 0.0});
    rep.reference_analyzed = true;
  } catch (const NoMinMaxPair&) {
    rep.reference_analyzed = false;
  }
  return rep;
}

std::vector<Table1Reproduction> reproduce_table1(const std::vector<Table1Entry>& entries, int jobs) {
  if (jobs <= 1) {
    std::vector<Table1Reproduction> out;
    for (const auto& e : entries) out.push_back(reproduce_table1_row(e));
    return out;
  }
  std::vector<std::future<Table1Reproduction>> pending;
  for (const auto& e : entries) pending.push_back(std::async(std::launch::async, reproduce_table1_row, e));
  std::vector<Table1Reproduction> out;
  for (auto& f : pending) out.push_back(f.get());
  return out;
}

double free_particle_mass(const ModelParams& p, const WeakPotentialShape& shape,
                          const numerics::Tolerance& tol) {
  p.validate();
  auto integrand = [&](double r) {
    const double dp = potentials::phi_p_prime(r, p);
    return (dp * dp + dp * potentials::psi_prime(r, shape, p)) * r * r;
  };
  const auto res = checked(numerics::integrate(integrand, 0.0, numerics::kInfinity, tol, p.s / p.alpha),
                           "free_particle_mass");
  return 0.5 * res.value;
}

double free_particle_mass_single_quark_closed_form(const ModelParams& p) {
  return (3.0 * p.alpha * p.b * p.b / 70.0 - p.b * p.lambda_amp / 140.0) / p.s;
}

}  // namespace cqm::energy
