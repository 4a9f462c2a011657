#pragma once

// One-dimensional numerical kernel: adaptive quadrature, bracketed root
// finding, bounded minimization and Richardson-extrapolated differentiation.
// Every routine is a pure function of its arguments.

#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace cqm::numerics {

using ScalarFunction = std::function<double(double)>;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Accuracy contract shared by all numerical routines.
struct Tolerance {
  double rel = 1e-10;
  double abs = 1e-14;
  long max_evals = 1'000'000;

  /// Throws std::invalid_argument unless rel > 0, abs >= 0, max_evals >= 1.
  void validate() const;
};

/// Thrown when an integrand or objective returns NaN or infinity.
class NonFiniteSample : public std::runtime_error {
 public:
  NonFiniteSample(const std::string& where, double at);
  double at() const noexcept { return at_; }

 private:
  double at_;
};

/// Thrown when a root bracket has no sign change.
class NoSignChange : public std::runtime_error {
 public:
  NoSignChange(double lo, double hi, double f_lo, double f_hi);
};

/// Thrown when an iterative method runs out of its evaluation budget.
class BudgetExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown when the differentiation step collapses below the resolution of r.
class StepUnderflow : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct IntegrationResult {
  double value = 0.0;
  double abs_error = 0.0;
  long evals = 0;
  // False when the budget ran out before the error bound was met; value is
  // then the best available estimate.
  bool converged = true;
};

/// Adaptive Gauss-Kronrod (7/15) quadrature of f over (lo, hi).
///
/// hi may be kInfinity, in which case the interval is mapped to (0, 1) by
/// u = (r - lo) / (scale + r - lo). `scale` should be the natural length of
/// the integrand (for this model, s/alpha); any positive value is correct,
/// a good one is faster. Endpoints are never sampled, so integrable endpoint
/// singularities are allowed.
IntegrationResult integrate(const ScalarFunction& f, double lo, double hi,
                            const Tolerance& tol = {}, double scale = 1.0);

/// Brent's method on [lo, hi]. Requires f(lo) and f(hi) of opposite sign
/// (an exact zero at either end is returned directly).
double find_root(const ScalarFunction& f, double lo, double hi,
                 const Tolerance& tol = {});

struct MinimumResult {
  double x = 0.0;
  double value = 0.0;
  // Set when the minimizer sits on (within tolerance of) a bracket end; the
  // caller's bracket then did not contain an interior minimum.
  bool at_boundary = false;
  long evals = 0;
};

/// Brent's parabolic/golden-section minimization on [lo, hi].
MinimumResult minimize_scalar(const ScalarFunction& f, double lo, double hi,
                              const Tolerance& tol = {});

/// First or second derivative of f at r by central differences with
/// Ridders-Richardson extrapolation. `step` is the initial step; zero picks
/// 0.1 * max(|r|, 1e-3 * scale) automatically.
double differentiate(const ScalarFunction& f, double r, int order,
                     const Tolerance& tol = {}, double step = 0.0,
                     double scale = 1.0);

/// Points lo, ..., hi spaced linearly or geometrically (geometric needs lo > 0).
std::vector<double> linear_grid(double lo, double hi, int count);
std::vector<double> geometric_grid(double lo, double hi, int count);

}  // namespace cqm::numerics
