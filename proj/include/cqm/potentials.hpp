#pragma once

// Weak-potential shapes and the potentials derived from them: the 3-potential
// A*, the general confining potential phi_k, the particular (Coulomb-like)
// potential phi_p, and the partition of space into one-quark regions.
//
// Conventions: psi_lambda(r) = lambda s^2 [Psi(r) + t], where Psi is the
// shape ("capital Psi"); phi_k(r) = (k / s^3) Phi_k(r) with
//   Phi_k = K s^3 Psi / (r^2 Psi') + P / (r^2 Psi') + C / (r^2 |Psi'|).

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cqm/numerics.hpp"

namespace cqm::potentials {

/// Physical scales and amplitudes shared by the potential and energy code.
struct ModelParams {
  double s = 1.0;           ///< length scale
  double alpha = 1.0;       ///< separation multiplier, x = alpha r / s
  double lambda_amp = 1.0;  ///< weak-potential amplitude lambda
  double k_amp = 1.0;       ///< confining amplitude k
  double t = 0.0;           ///< additive constant of psi_lambda (units 1/s^3)
  double b = 1.0;           ///< quark (Coulomb) charge

  void validate() const;
  double x_of(double r) const { return alpha * r / s; }
  double r_of(double x) const { return x * s / alpha; }
};

/// Shape value and its first two radial derivatives.
struct ShapeValue {
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

/// Radial profile Psi(r) with analytic first and second derivatives.
///
/// The built-in family is p(r) / (s + alpha r)^m with p a polynomial in r
/// and m > deg p + 2, which contains both closed-form instances used by the
/// model. Arbitrary callables are accepted through `custom`.
class WeakPotentialShape {
 public:
  using Evaluator = std::function<ShapeValue(double r, double s, double alpha)>;

  /// p(r) = sum_j coeffs[j] r^j. Throws std::invalid_argument when the
  /// polynomial is zero or m <= deg p + 2.
  static WeakPotentialShape rational(std::vector<double> coeffs, int m,
                                     std::string name = "rational");
  static WeakPotentialShape custom(std::string name, Evaluator eval);

  /// 1 / (s + alpha r)^3: monotonic, no extrema.
  static WeakPotentialShape single_quark();
  /// r / (s + alpha r)^4: one maximum at alpha r = s / 3.
  static WeakPotentialShape two_quark();
  /// (r - c)^2 / (s + alpha r)^5: minimum at r = c, then a maximum at
  /// r = (2 s + 5 alpha c) / (3 alpha).
  static WeakPotentialShape three_quark(double c = 1.0);

  ShapeValue evaluate(double r, double s, double alpha) const { return eval_(r, s, alpha); }
  const std::string& name() const noexcept { return name_; }

  /// Polynomial coefficients and exponent, when built by `rational`.
  const std::vector<double>& coefficients() const noexcept { return coeffs_; }
  std::optional<int> exponent() const noexcept { return exponent_; }

 private:
  WeakPotentialShape(std::string name, Evaluator eval) : name_(std::move(name)), eval_(std::move(eval)) {}

  std::string name_;
  Evaluator eval_;
  std::vector<double> coeffs_;
  std::optional<int> exponent_;
};

/// Integration constants of the general confining solution.
struct ConfiningCoefficients {
  double K = 0.0;
  double P = 0.0;
  double C = 1.0;

  /// P = K s^3 beta, with beta the merged integration constant.
  static ConfiningCoefficients from_beta(double K, double beta, double C, double s) {
    return {K, K * s * s * s * beta, C};
  }
  void validate() const;
};

/// C that turns the K = P = 0 single-quark solution into k (s + alpha r)^4 / (s^3 r^2).
inline ConfiningCoefficients single_quark_closed_form_coefficients(const ModelParams& p) {
  return {0.0, 0.0, 3.0 * p.alpha};
}

/// Raised when a quantity divided by Psi' is evaluated at an extremum of Psi.
class ExtremumSingularity : public std::domain_error {
 public:
  explicit ExtremumSingularity(double r);
  double radius() const noexcept { return r_; }

 private:
  double r_;
};

/// Raised when Psi' and Psi'' vanish together (a non-simple extremum).
class DegenerateExtremum : public std::domain_error {
 public:
  explicit DegenerateExtremum(double r);
  double radius() const noexcept { return r_; }

 private:
  double r_;
};

/// Relative distance to an extremum below which r counts as singular.
inline constexpr double kSingularRelDistance = 1e-12;

/// True when r lies within `rel` relative distance of a zero of Psi'.
bool near_extremum(const WeakPotentialShape& shape, const ModelParams& p, double r,
                   double rel = kSingularRelDistance);

double psi(double r, const WeakPotentialShape& shape, const ModelParams& p);
double psi_prime(double r, const WeakPotentialShape& shape, const ModelParams& p);
double psi_double_prime(double r, const WeakPotentialShape& shape, const ModelParams& p);

/// A* = Psi'' / Psi' + 2 / r.
double astar(double r, const WeakPotentialShape& shape, const ModelParams& p);

/// Dimensionless confining profile Phi_k (phi_k divided by k / s^3).
double phi_k_reduced(double r, const WeakPotentialShape& shape, const ModelParams& p,
                     const ConfiningCoefficients& c);
/// dPhi_k/dr = K s^3 / r^2 - Phi_k A*.
double phi_k_reduced_prime(double r, const WeakPotentialShape& shape, const ModelParams& p,
                           const ConfiningCoefficients& c);

double phi_k(double r, const WeakPotentialShape& shape, const ModelParams& p,
             const ConfiningCoefficients& c);
double phi_k_prime(double r, const WeakPotentialShape& shape, const ModelParams& p,
                   const ConfiningCoefficients& c);

/// The three additive pieces of Phi_k, for sign-rule checks.
struct ConfiningTerms {
  double k_term = 0.0;
  double p_term = 0.0;
  double c_term = 0.0;
};
ConfiningTerms phi_k_terms(double r, const WeakPotentialShape& shape, const ModelParams& p,
                           const ConfiningCoefficients& c);

/// phi_p = b alpha^3 r^2 / (s + alpha r)^3.
double phi_p(double r, const ModelParams& p);
double phi_p_prime(double r, const ModelParams& p);

/// External 3-current density of the single-quark solution: a smooth part
/// plus a point weight at the origin.
struct CurrentDensity {
  double smooth = 0.0;
  double delta_weight = 0.0;
};
CurrentDensity external_current_density(double r, const ModelParams& p, double q);

struct Region {
  double r_lo = 0.0;
  double r_hi = numerics::kInfinity;
  int psi_prime_sign = 0;  ///< +1 or -1 throughout the open interval
};

/// Partition of (0, inf) at the extrema of Psi.
struct RegionDecomposition {
  std::vector<double> extrema;
  std::vector<Region> regions;
};

/// Locates all extrema on a geometric sign-scan grid of alpha r / s in
/// [x_lo, x_hi] and refines them by bracketed root finding.
/// Throws DegenerateExtremum for a non-simple extremum.
RegionDecomposition decompose_regions(const WeakPotentialShape& shape, const ModelParams& p,
                                      int scan_points = 4001, double x_lo = 1e-8,
                                      double x_hi = 1e8);

struct AsymptoticClause {
  std::string name;
  double expected = 0.0;
  double measured = 0.0;
  bool pass = false;
};

struct AsymptoticsReport {
  int origin_order = 1;  ///< n in Psi - Psi(0) ~ r^n
  std::vector<AsymptoticClause> clauses;
  bool all_pass() const;
};

/// Measures log-log slopes of Phi_k and r A* near the origin and far out,
/// and the divergence of both at every extremum.
AsymptoticsReport verify_asymptotics(const WeakPotentialShape& shape, const ModelParams& p,
                                     const ConfiningCoefficients& c);

enum class GridSpacing { Linear, Log };

struct GridSpec {
  GridSpacing spacing = GridSpacing::Log;
  double lo = 1e-2;
  double hi = 1e2;
  int count = 101;

  void validate() const;
  std::vector<double> points() const;
};

/// One sampled radius. astar and phi_k are empty at singular radii (the
/// origin and the extrema of Psi).
struct CurveRow {
  double r = 0.0;
  double psi = 0.0;
  double psi_prime = 0.0;
  std::optional<double> astar;
  std::optional<double> phi_k;
  double phi_p = 0.0;
  bool singular() const { return !astar || !phi_k; }
};

/// Samples all curves on the grid; `jobs` > 1 splits the grid across threads
/// without changing the output order.
std::vector<CurveRow> sample_curves(const WeakPotentialShape& shape, const ModelParams& p,
                                    const ConfiningCoefficients& c, const GridSpec& grid,
                                    int jobs = 1);

}  // namespace cqm::potentials
