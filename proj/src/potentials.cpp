#include "cqm/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <sstream>

namespace cqm::potentials {

namespace {

std::string at_radius(const char* what, double r) {
  std::ostringstream os;
  os.precision(17);
  os << what << " at r = " << r;
  return os.str();
}

void require_positive_radius(double r, const char* fn) {
  if (!(r > 0.0) || !std::isfinite(r))
    throw std::invalid_argument(std::string(fn) + ": r must be finite and > 0");
}

// p, p', p'' by Horner.
ShapeValue polynomial(const std::vector<double>& c, double r) {
  ShapeValue v;
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    v.d2 = v.d2 * r + 2.0 * v.d1;
    v.d1 = v.d1 * r + v.value;
    v.value = v.value * r + *it;
  }
  return v;
}

int degree(const std::vector<double>& c) {
  for (int j = static_cast<int>(c.size()) - 1; j >= 0; --j)
    if (c[j] != 0.0) return j;
  return -1;
}

double log_slope(const std::function<double(double)>& f, double r, double ratio = 1.001) {
  const double lo = r / ratio;
  const double hi = r * ratio;
  return (std::log(std::abs(f(hi))) - std::log(std::abs(f(lo)))) / (std::log(hi) - std::log(lo));
}

}  // namespace

void ModelParams::validate() const {
  if (!(s > 0.0) || !std::isfinite(s)) throw std::invalid_argument("params: s must be finite and > 0");
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw std::invalid_argument("params: alpha must be finite and > 0");
  for (double v : {lambda_amp, k_amp, t, b})
    if (!std::isfinite(v)) throw std::invalid_argument("params: amplitudes must be finite");
}

void ConfiningCoefficients::validate() const {
  if (!std::isfinite(K) || !std::isfinite(P) || !std::isfinite(C))
    throw std::invalid_argument("coefficients: K, P, C must be finite");
}

WeakPotentialShape WeakPotentialShape::rational(std::vector<double> coeffs, int m, std::string name) {
  const int deg = degree(coeffs);
  if (deg < 0) throw std::invalid_argument("rational shape: polynomial is zero");
  for (double c : coeffs)
    if (!std::isfinite(c)) throw std::invalid_argument("rational shape: non-finite coefficient");
  if (m <= deg + 2) throw std::invalid_argument("rational shape: need m > deg(p) + 2");
  coeffs.resize(static_cast<std::size_t>(deg + 1));
  auto eval = [coeffs, m](double r, double s, double alpha) {
    const ShapeValue p = polynomial(coeffs, r);
    const double d = s + alpha * r;
    const double inv = 1.0 / d;
    const double base = std::pow(inv, m);
    const double mm = static_cast<double>(m);
    ShapeValue v;
    v.value = p.value * base;
    v.d1 = (p.d1 * d - mm * alpha * p.value) * base * inv;
    v.d2 = (p.d2 * d * d - 2.0 * mm * alpha * p.d1 * d + mm * (mm + 1.0) * alpha * alpha * p.value) *
           base * inv * inv;
    return v;
  };
  WeakPotentialShape shape(std::move(name), eval);
  shape.coeffs_ = std::move(coeffs);
  shape.exponent_ = m;
  return shape;
}

WeakPotentialShape WeakPotentialShape::custom(std::string name, Evaluator eval) {
  if (!eval) throw std::invalid_argument("custom shape: empty evaluator");
  return WeakPotentialShape(std::move(name), std::move(eval));
}

WeakPotentialShape WeakPotentialShape::single_quark() { return rational({1.0}, 3, "single"); }

WeakPotentialShape WeakPotentialShape::two_quark() { return rational({0.0, 1.0}, 4, "two-quark"); }

WeakPotentialShape WeakPotentialShape::three_quark(double c) {
  if (!(c > 0.0)) throw std::invalid_argument("three-quark shape: c must be > 0");
  return rational({c * c, -2.0 * c, 1.0}, 5, "three-quark");
}

ExtremumSingularity::ExtremumSingularity(double r)
    : std::domain_error(at_radius("extremum singularity (Psi' = 0)", r)), r_(r) {}

DegenerateExtremum::DegenerateExtremum(double r)
    : std::domain_error(at_radius("degenerate extremum (Psi' and Psi'' both vanish)", r)), r_(r) {}

bool near_extremum(const WeakPotentialShape& shape, const ModelParams& p, double r, double rel) {
  const ShapeValue v = shape.evaluate(r, p.s, p.alpha);
  return std::abs(v.d1) <= rel * std::abs(v.d2) * r || (v.d1 == 0.0);
}

double psi(double r, const WeakPotentialShape& shape, const ModelParams& p) {
  if (!(r >= 0.0)) throw std::invalid_argument("psi: r must be >= 0");
  return p.lambda_amp * p.s * p.s * (shape.evaluate(r, p.s, p.alpha).value + p.t);
}

double psi_prime(double r, const WeakPotentialShape& shape, const ModelParams& p) {
  if (!(r >= 0.0)) throw std::invalid_argument("psi_prime: r must be >= 0");
  return p.lambda_amp * p.s * p.s * shape.evaluate(r, p.s, p.alpha).d1;
}

double psi_double_prime(double r, const WeakPotentialShape& shape, const ModelParams& p) {
  if (!(r >= 0.0)) throw std::invalid_argument("psi_double_prime: r must be >= 0");
  return p.lambda_amp * p.s * p.s * shape.evaluate(r, p.s, p.alpha).d2;
}

double astar(double r, const WeakPotentialShape& shape, const ModelParams& p) {
  require_positive_radius(r, "astar");
  const ShapeValue v = shape.evaluate(r, p.s, p.alpha);
  if (std::abs(v.d1) <= kSingularRelDistance * std::abs(v.d2) * r || v.d1 == 0.0)
    throw ExtremumSingularity(r);
  return v.d2 / v.d1 + 2.0 / r;
}

ConfiningTerms phi_k_terms(double r, const WeakPotentialShape& shape, const ModelParams& p,
                           const ConfiningCoefficients& c) {
  require_positive_radius(r, "phi_k");
  const ShapeValue v = shape.evaluate(r, p.s, p.alpha);
  if (std::abs(v.d1) <= kSingularRelDistance * std::abs(v.d2) * r || v.d1 == 0.0)
    throw ExtremumSingularity(r);
  const double denom = r * r * v.d1;
  const double s3 = p.s * p.s * p.s;
  return {c.K * s3 * v.value / denom, c.P / denom, c.C / std::abs(denom)};
}

double phi_k_reduced(double r, const WeakPotentialShape& shape, const ModelParams& p,
                     const ConfiningCoefficients& c) {
  const ConfiningTerms t = phi_k_terms(r, shape, p, c);
  return t.k_term + t.p_term + t.c_term;
}

double phi_k_reduced_prime(double r, const WeakPotentialShape& shape, const ModelParams& p,
                           const ConfiningCoefficients& c) {
  const double s3 = p.s * p.s * p.s;
  return c.K * s3 / (r * r) - phi_k_reduced(r, shape, p, c) * astar(r, shape, p);
}

double phi_k(double r, const WeakPotentialShape& shape, const ModelParams& p,
             const ConfiningCoefficients& c) {
  return p.k_amp / (p.s * p.s * p.s) * phi_k_reduced(r, shape, p, c);
}

double phi_k_prime(double r, const WeakPotentialShape& shape, const ModelParams& p,
                   const ConfiningCoefficients& c) {
  return p.k_amp / (p.s * p.s * p.s) * phi_k_reduced_prime(r, shape, p, c);
}

double phi_p(double r, const ModelParams& p) {
  if (!(r >= 0.0)) throw std::invalid_argument("phi_p: r must be >= 0");
  const double d = p.s + p.alpha * r;
  return p.b * p.alpha * p.alpha * p.alpha * r * r / (d * d * d);
}

double phi_p_prime(double r, const ModelParams& p) {
  if (!(r >= 0.0)) throw std::invalid_argument("phi_p_prime: r must be >= 0");
  const double d = p.s + p.alpha * r;
  const double d2 = d * d;
  return p.b * p.alpha * p.alpha * p.alpha * r * (2.0 * p.s - p.alpha * r) / (d2 * d2);
}

CurrentDensity external_current_density(double r, const ModelParams& p, double q) {
  require_positive_radius(r, "external_current_density");
  const double d = p.s + p.alpha * r;
  const double smooth = 2.0 * std::sqrt(2.0) * q * p.alpha * p.alpha * p.s * (p.s - p.alpha * r) /
                        (M_PI * r * r * d * d * d);
  return {smooth, -2.0 * std::sqrt(2.0) * q};
}

RegionDecomposition decompose_regions(const WeakPotentialShape& shape, const ModelParams& p,
                                      int scan_points, double x_lo, double x_hi) {
  p.validate();
  if (scan_points < 3) throw std::invalid_argument("decompose_regions: need >= 3 scan points");
  const auto xs = numerics::geometric_grid(x_lo, x_hi, scan_points);
  auto d1 = [&](double r) { return shape.evaluate(r, p.s, p.alpha).d1; };

  std::vector<double> rs(xs.size());
  std::vector<double> vals(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    rs[i] = p.r_of(xs[i]);
    vals[i] = d1(rs[i]);
    if (!std::isfinite(vals[i])) throw numerics::NonFiniteSample("decompose_regions", rs[i]);
  }

  numerics::Tolerance tight{1e-15, 0.0, 10000};
  auto check_simple = [&](double r0) {
    constexpr double delta = 1e-2;
    const double curvature = std::abs(shape.evaluate(r0, p.s, p.alpha).d2) * r0 * delta;
    const double side = std::max(std::abs(d1(r0 * (1.0 + delta))), std::abs(d1(r0 * (1.0 - delta))));
    if (curvature < 1e-3 * side || side == 0.0) throw DegenerateExtremum(r0);
  };

  std::vector<double> extrema;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    const double a = vals[i];
    const double b = vals[i + 1];
    if (a == 0.0) {
      // Exact zero on a grid point: an extremum only if the sign flips across it.
      if (i > 0 && vals[i - 1] != 0.0 && b != 0.0 && (vals[i - 1] > 0.0) != (b > 0.0)) {
        check_simple(rs[i]);
        extrema.push_back(rs[i]);
      } else if (i > 0) {
        throw DegenerateExtremum(rs[i]);
      }
      continue;
    }
    if (b != 0.0 && (a > 0.0) != (b > 0.0)) {
      const double root = numerics::find_root(d1, rs[i], rs[i + 1], tight);
      check_simple(root);
      extrema.push_back(root);
      continue;
    }
    // |Psi'| dipping to zero without a sign change is an even-order root.
    if (i > 0 && b != 0.0 && vals[i - 1] != 0.0 && (vals[i - 1] > 0.0) == (a > 0.0) &&
        (a > 0.0) == (b > 0.0) && std::abs(a) < std::abs(vals[i - 1]) && std::abs(a) < std::abs(b)) {
      const auto dip = numerics::minimize_scalar([&](double r) { return std::abs(d1(r)); }, rs[i - 1],
                                                 rs[i + 1], {1e-12, 0.0, 10000});
      if (dip.value <= 1e-9 * std::max(std::abs(vals[i - 1]), std::abs(b))) throw DegenerateExtremum(dip.x);
    }
  }

  RegionDecomposition out;
  out.extrema = extrema;
  double lo = 0.0;
  for (std::size_t j = 0; j <= extrema.size(); ++j) {
    const double hi = j < extrema.size() ? extrema[j] : numerics::kInfinity;
    // Sign from a point strictly inside the interval.
    double probe;
    if (std::isinf(hi)) probe = std::max(2.0 * lo, p.r_of(1.0));
    else if (lo == 0.0) probe = 0.5 * hi;
    else probe = std::sqrt(lo * hi);
    const double v = d1(probe);
    out.regions.push_back({lo, hi, v > 0.0 ? 1 : -1});
    lo = hi;
  }
  return out;
}

bool AsymptoticsReport::all_pass() const {
  return std::all_of(clauses.begin(), clauses.end(), [](const auto& c) { return c.pass; });
}

AsymptoticsReport verify_asymptotics(const WeakPotentialShape& shape, const ModelParams& p,
                                     const ConfiningCoefficients& c) {
  constexpr double kSlopeTol = 1e-3;
  AsymptoticsReport report;
  const double near = p.r_of(1e-6);
  const double far = p.r_of(1e6);

  auto d1_abs = [&](double r) { return shape.evaluate(r, p.s, p.alpha).d1; };
  const double psi_prime_slope = log_slope(d1_abs, near);
  report.origin_order = std::max(1, static_cast<int>(std::lround(1.0 + psi_prime_slope)));
  const int n = report.origin_order;

  auto phi = [&](double r) { return phi_k_reduced(r, shape, p, c); };
  auto add = [&](std::string name, double expected, double measured, double tol) {
    report.clauses.push_back({std::move(name), expected, measured, std::abs(measured - expected) <= tol});
  };

  const bool has_pc = c.P != 0.0 || c.C != 0.0;
  add("(a) Phi_k log-slope far from origin", has_pc ? 2.0 : -1.0, log_slope(phi, far), kSlopeTol);
  add("(b) Phi_k log-slope near origin", -(n + 1.0), log_slope(phi, near), kSlopeTol);

  const auto regions = decompose_regions(shape, p);
  for (double re : regions.extrema) {
    for (double side : {-1.0, 1.0}) {
      const double r1 = re * (1.0 + side * 1e-7);
      const double r2 = re * (1.0 + side * 1e-5);
      const double dist = std::log(std::abs(r2 - re)) - std::log(std::abs(r1 - re));
      const double a_slope =
          (std::log(std::abs(astar(r2, shape, p))) - std::log(std::abs(astar(r1, shape, p)))) / dist;
      std::ostringstream label;
      label.precision(6);
      label << "(c) A* ~ 1/|r - r_e| at r_e = " << re << (side < 0 ? " (inner)" : " (outer)");
      add(label.str(), -1.0, a_slope, 1e-2);
      if (c.K != 0.0 || has_pc) {
        const double p_slope = (std::log(std::abs(phi(r2))) - std::log(std::abs(phi(r1)))) / dist;
        std::ostringstream plabel;
        plabel.precision(6);
        plabel << "(c) Phi_k ~ 1/|r - r_e| at r_e = " << re << (side < 0 ? " (inner)" : " (outer)");
        add(plabel.str(), -1.0, p_slope, 1e-2);
      }
    }
  }

  add("(d) r A* far from origin", -2.0, far * astar(far, shape, p), kSlopeTol);
  add("(d) r A* near origin", n + 1.0, near * astar(near, shape, p), kSlopeTol);
  return report;
}

void GridSpec::validate() const {
  if (count < 1) throw std::invalid_argument("grid: count must be >= 1");
  if (!std::isfinite(lo) || !std::isfinite(hi) || hi < lo)
    throw std::invalid_argument("grid: need finite lo <= hi");
  if (spacing == GridSpacing::Log && !(lo > 0.0))
    throw std::invalid_argument("grid: log spacing needs lo > 0");
  if (spacing == GridSpacing::Linear && lo < 0.0)
    throw std::invalid_argument("grid: radii must be >= 0");
}

std::vector<double> GridSpec::points() const {
  validate();
  return spacing == GridSpacing::Log ? numerics::geometric_grid(lo, hi, count)
                                     : numerics::linear_grid(lo, hi, count);
}

std::vector<CurveRow> sample_curves(const WeakPotentialShape& shape, const ModelParams& p,
                                    const ConfiningCoefficients& c, const GridSpec& grid, int jobs) {
  p.validate();
  c.validate();
  const auto rs = grid.points();
  std::vector<CurveRow> rows(rs.size());

  auto fill = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const double r = rs[i];
      CurveRow& row = rows[i];
      row.r = r;
      row.psi = psi(r, shape, p);
      row.psi_prime = psi_prime(r, shape, p);
      row.phi_p = phi_p(r, p);
      if (r > 0.0 && !near_extremum(shape, p, r)) {
        row.astar = astar(r, shape, p);
        row.phi_k = phi_k(r, shape, p, c);
      }
    }
  };

  const std::size_t workers = static_cast<std::size_t>(std::max(1, jobs));
  if (workers == 1 || rs.size() < 2 * workers) {
    fill(0, rs.size());
    return rows;
  }
  std::vector<std::future<void>> pending;
  const std::size_t chunk = (rs.size() + workers - 1) / workers;
  for (std::size_t begin = 0; begin < rs.size(); begin += chunk)
    pending.push_back(std::async(std::launch::async, fill, begin, std::min(rs.size(), begin + chunk)));
  for (auto& f : pending) f.get();
  return rows;
}

}  // namespace cqm::potentials
