#pragma once

// Coulomb, confining and weak interaction energies; per-region energy minima;
// the dimensionless unstable-quark energy and its tabulated solutions; the
// free-particle mass.

#include <stdexcept>
#include <string>
#include <vector>

#include "cqm/numerics.hpp"
#include "cqm/potentials.hpp"

namespace cqm::energy {

using potentials::ConfiningCoefficients;
using potentials::ModelParams;
using potentials::Region;
using potentials::WeakPotentialShape;

class QuadratureFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// No minimum strictly inside the region: the energy runs off to a boundary.
class NoInteriorMinimum : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// xi_c = 1/2 int_0^inf (d phi_p / dr)^2 r^2 dr, by quadrature.
double coulomb_energy(const ModelParams& p, const numerics::Tolerance& tol = {});

/// (3/70) alpha b^2 / s.
double coulomb_energy_closed_form(const ModelParams& p);

struct EnergyTerms {
  double coulomb = 0.0;
  double confining = 0.0;  ///< b phi_k
  double weak = 0.0;       ///< b psi_lambda, including the b lambda s^2 t offset
  double total() const { return coulomb + confining + weak; }
};

/// xi(r) = xi_c + b phi_k(r) + b psi_lambda(r) for a fixed model.
class EnergyFunction {
 public:
  /// With include_coulomb false the constant xi_c is left out (it does not
  /// move any extremum).
  EnergyFunction(ModelParams params, WeakPotentialShape shape, ConfiningCoefficients coeffs,
                 bool include_coulomb = true, const numerics::Tolerance& tol = {});

  double operator()(double r) const { return terms(r).total(); }
  EnergyTerms terms(double r) const;
  /// Analytic d xi / dr.
  double derivative(double r) const;

  const ModelParams& params() const noexcept { return params_; }
  const WeakPotentialShape& shape() const noexcept { return shape_; }
  const ConfiningCoefficients& coefficients() const noexcept { return coeffs_; }
  double coulomb() const noexcept { return coulomb_; }

 private:
  ModelParams params_;
  WeakPotentialShape shape_;
  ConfiningCoefficients coeffs_;
  double coulomb_ = 0.0;
};

double total_energy(double r, const ModelParams& p, const WeakPotentialShape& shape,
                    const ConfiningCoefficients& c);

enum class ExtremumKind { Minimum, Maximum };

struct Extremum {
  double r = 0.0;
  double value = 0.0;
  ExtremumKind kind = ExtremumKind::Minimum;
};

/// Sampled energy over one region, with every interior extremum located.
struct EnergyProfile {
  Region region;
  std::vector<std::pair<double, double>> samples;  ///< (r, xi), singular radii skipped
  std::vector<Extremum> extrema;
};

EnergyProfile profile_region(const EnergyFunction& xi, const Region& region, int points = 400);

struct EnergyMinimum {
  double r_m = 0.0;
  double x_m = 0.0;  ///< alpha r_m / s
  double value = 0.0;
};

/// Lowest interior minimum of xi in the region. The search runs in
/// x = alpha r / s; the minimizer is refined as the root of d xi / dr.
/// Throws NoInteriorMinimum when the lowest sample touches a region edge.
EnergyMinimum find_energy_minimum(const EnergyFunction& xi, const Region& region,
                                  const numerics::Tolerance& tol = {1e-13, 0.0, 100000});

/// 2 (n + 1)^7 (n - 1) / n^3.
double single_quark_n_lhs(double n);

/// Unique n > 1 with single_quark_n_lhs(n) = rhs, where rhs = lambda / (k alpha^3).
double solve_single_quark_n(double rhs, const numerics::Tolerance& tol = {1e-13, 0.0, 100000});

/// Dimensionless parameters of the partially confined second quark.
struct UnstableParams {
  double D = 10.0;  ///< -alpha K
  double U = 1.0;   ///< alpha^2 (P - C)
  double N = 0.0;   ///< lambda / (alpha k)
  double T = 0.0;   ///< s^3 lambda t / k

  static UnstableParams from_model(const ModelParams& p, const ConfiningCoefficients& c);
};

/// Raised when E is evaluated at its pole x = 1/3.
class PoleAtOneThird : public std::domain_error {
 public:
  PoleAtOneThird();
};

/// E(x) = D (1+x) / (x (3x-1)) - U (1+x)^5 / (x^2 (3x-1)) + N x / (1+x)^4 + T.
double unstable_energy(double x, const UnstableParams& up);
/// Analytic dE/dx.
double unstable_energy_prime(double x, const UnstableParams& up);

/// (9/4)(4/3)^5, the critical D/U for a positive divergence at x = 1/3.
double divergence_threshold_ratio();
/// True iff 4 D - 9 U (4/3)^5 > 0. Throws std::invalid_argument for U <= 0.
bool divergence_threshold(const UnstableParams& up);

/// N that makes x_star a stationary point of E for the given D and U.
/// Throws std::domain_error when -3x^2 - 6x + 1 = 0 or x_star <= 1/3.
double solve_N_for_extremum(double D, double x_star, double U = 1.0);

struct UnstableRow {
  double D = 0.0;
  double N = 0.0;
  double x_min = 0.0;
  double x_max = 0.0;
  double E_min = 0.0;
  double E_max = 0.0;
  double depth = 0.0;  ///< E_max - E_min
};

/// No minimum-then-maximum pair on (1/3, x_hi).
class NoMinMaxPair : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Finds the interior minimum and the following maximum of E on
/// (1/3, x_hi) by a derivative sign-scan over a geometric grid, then
/// bracketed minimization. Also checks that E falls below E_min beyond
/// x_max (partial confinement).
UnstableRow analyze_unstable(const UnstableParams& up, int scan_points = 1000, double x_hi = 100.0,
                             const numerics::Tolerance& tol = {1e-12, 0.0, 100000});

enum class SeedKind { Minimum, Maximum };
const char* to_string(SeedKind k) noexcept;

/// One published row of unstable solutions.
struct Table1Entry {
  double D = 0.0;
  double N = 0.0;
  double x_min = 0.0;
  double x_max = 0.0;
  double E_min = 0.0;
  double E_max = 0.0;
  double depth = 0.0;
  SeedKind seed = SeedKind::Maximum;  ///< which listed extremum fixed N

  double seed_x() const { return seed == SeedKind::Maximum ? x_max : x_min; }
  double other_x() const { return seed == SeedKind::Maximum ? x_min : x_max; }
};

/// The five published rows.
std::vector<Table1Entry> table1_reference();

struct SeedResult {
  SeedKind seed = SeedKind::Maximum;
  double x_seed = 0.0;
  double N = 0.0;
  double rel_err_N = 0.0;
  bool analyzed = false;  ///< false when no min/max pair exists for this N
  UnstableRow row;
};

struct Table1Reproduction {
  Table1Entry reference;
  SeedResult designated;       ///< N solved from the designated seed
  SeedResult alternate;        ///< N solved from the other listed extremum
  bool reference_analyzed = false;
  UnstableRow with_reference_N;  ///< E analyzed at the published N
};

Table1Reproduction reproduce_table1_row(const Table1Entry& entry);
std::vector<Table1Reproduction> reproduce_table1(const std::vector<Table1Entry>& entries, int jobs = 1);

/// m = 1/2 int_0^inf [(phi_p')^2 + phi_p' psi_lambda'] r^2 dr.
double free_particle_mass(const ModelParams& p, const WeakPotentialShape& shape,
                          const numerics::Tolerance& tol = {});

/// (3 alpha b^2 / 70 - b lambda / 140) / s, valid for the single-quark shape.
double free_particle_mass_single_quark_closed_form(const ModelParams& p);

}  // namespace cqm::energy
