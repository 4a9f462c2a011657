#include "cqm/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <sstream>

namespace cqm::numerics {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

std::string describe(const char* what, double at) {
  std::ostringstream os;
  os.precision(17);
  os << what << " at r = " << at;
  return os.str();
}

// Gauss-Kronrod 7/15 nodes and weights (QUADPACK qk15).
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a = 0.0;
  double b = 0.0;
  double value = 0.0;
  double error = 0.0;
  bool operator<(const Segment& o) const { return error < o.error; }
};

template <class G>
Segment gauss_kronrod(const G& g, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = g(center);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double f1 = g(center - dx);
    const double f2 = g(center + dx);
    kronrod += kWgk[j] * (f1 + f2);
    // Odd Kronrod indices coincide with the Gauss nodes.
    if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
  }
  Segment s{a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
  return s;
}

}  // namespace

void Tolerance::validate() const {
  if (!(rel > 0.0) || !std::isfinite(rel))
    throw std::invalid_argument("tolerance: rel must be > 0");
  if (!(abs >= 0.0) || !std::isfinite(abs))
    throw std::invalid_argument("tolerance: abs must be >= 0");
  if (max_evals < 1)
    throw std::invalid_argument("tolerance: max_evals must be >= 1");
}

NonFiniteSample::NonFiniteSample(const std::string& where, double at)
    : std::runtime_error(describe((where + ": non-finite sample").c_str(), at)),
      at_(at) {}

NoSignChange::NoSignChange(double lo, double hi, double f_lo, double f_hi)
    : std::runtime_error([&] {
        std::ostringstream os;
        os.precision(17);
        os << "find_root: no sign change on [" << lo << ", " << hi
           << "] (f = " << f_lo << ", " << f_hi << ")";
        return os.str();
      }()) {}

IntegrationResult integrate(const ScalarFunction& f, double lo, double hi,
                            const Tolerance& tol, double scale) {
  tol.validate();
  if (!(scale > 0.0)) throw std::invalid_argument("integrate: scale must be > 0");
  if (std::isnan(lo) || std::isnan(hi) || std::isinf(lo))
    throw std::invalid_argument("integrate: bad interval");
  if (lo == hi) return {};
  if (hi < lo) {
    auto r = integrate(f, hi, lo, tol, scale);
    r.value = -r.value;
    return r;
  }

  long evals = 0;
  const bool semi_infinite = std::isinf(hi);
  auto g = [&](double t) {
    double r = t;
    double jac = 1.0;
    if (semi_infinite) {
      const double w = 1.0 - t;
      r = lo + scale * t / w;
      jac = scale / (w * w);
    }
    ++evals;
    const double v = f(r);
    if (!std::isfinite(v)) throw NonFiniteSample("integrate", r);
    return v * jac;
  };
  const double a = semi_infinite ? 0.0 : lo;
  const double b = semi_infinite ? 1.0 : hi;

  std::priority_queue<Segment> work;
  Segment first = gauss_kronrod(g, a, b);
  double total = first.value;
  double error = first.error;
  // Segments that can no longer be split meaningfully are retired here.
  double retired_error = 0.0;
  work.push(first);

  auto target = [&] { return std::max(tol.abs, tol.rel * std::abs(total)); };
  while (error > target()) {
    if (work.empty()) break;
    if (evals + 30 > tol.max_evals) {
      return {total, error, evals, false};
    }
    Segment worst = work.top();
    work.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b ||
        (worst.b - worst.a) < 64.0 * kEps * std::max(std::abs(mid), 1e-300)) {
      retired_error += worst.error;
      if (work.empty()) break;
      continue;
    }
    Segment left = gauss_kronrod(g, worst.a, mid);
    Segment right = gauss_kronrod(g, mid, worst.b);
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    work.push(left);
    work.push(right);
  }
  // Re-sum from the pieces to shed accumulated update round-off.
  double sum = 0.0;
  double err = retired_error;
  std::vector<Segment> pieces;
  while (!work.empty()) {
    pieces.push_back(work.top());
    work.pop();
  }
  std::sort(pieces.begin(), pieces.end(),
            [](const Segment& x, const Segment& y) { return x.a < y.a; });
  for (const auto& p : pieces) {
    sum += p.value;
    err += p.error;
  }
  if (pieces.empty()) sum = total;
  const bool ok = err <= std::max(tol.abs, tol.rel * std::abs(sum));
  return {sum, err, evals, ok};
}

double find_root(const ScalarFunction& f, double lo, double hi,
                 const Tolerance& tol) {
  tol.validate();
  double a = lo;
  double b = hi;
  double fa = f(a);
  double fb = f(b);
  long evals = 2;
  if (!std::isfinite(fa)) throw NonFiniteSample("find_root", a);
  if (!std::isfinite(fb)) throw NonFiniteSample("find_root", b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa > 0.0) == (fb > 0.0)) throw NoSignChange(lo, hi, fa, fb);

  double c = a;
  double fc = fa;
  double d = b - a;
  double e = d;
  for (;;) {
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = b - a;
      e = d;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double tol1 = 2.0 * kEps * std::abs(b) +
                        0.5 * std::max(tol.abs, tol.rel * std::abs(b));
    const double xm = 0.5 * (c - b);
    if (std::abs(xm) <= tol1 || fb == 0.0) return b;
    if (evals >= tol.max_evals)
      throw BudgetExhausted("find_root: evaluation budget exhausted");

    if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
      // Inverse quadratic interpolation, or secant when only two points.
      double p;
      double q;
      const double s = fb / fa;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        const double qa = fa / fc;
        const double r = fb / fc;
        p = s * (2.0 * xm * qa * (qa - r) - (b - a) * (r - 1.0));
        q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::abs(p);
      const double min1 = 3.0 * xm * q - std::abs(tol1 * q);
      const double min2 = std::abs(e * q);
      if (2.0 * p < std::min(min1, min2)) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += std::abs(d) > tol1 ? d : (xm > 0.0 ? tol1 : -tol1);
    fb = f(b);
    ++evals;
    if (!std::isfinite(fb)) throw NonFiniteSample("find_root", b);
  }
}

MinimumResult minimize_scalar(const ScalarFunction& f, double lo, double hi,
                              const Tolerance& tol) {
  tol.validate();
  if (!(lo < hi)) throw std::invalid_argument("minimize_scalar: need lo < hi");
  constexpr double kGolden = 0.3819660112501051;  // (3 - sqrt 5) / 2
  long evals = 0;
  auto eval = [&](double x) {
    ++evals;
    const double v = f(x);
    if (!std::isfinite(v)) throw NonFiniteSample("minimize_scalar", x);
    return v;
  };

  double a = lo;
  double b = hi;
  double x = a + kGolden * (b - a);
  double w = x;
  double v = x;
  double fx = eval(x);
  double fw = fx;
  double fv = fx;
  double d = 0.0;
  double e = 0.0;
  double tol1 = 0.0;
  for (;;) {
    const double xm = 0.5 * (a + b);
    tol1 = std::sqrt(kEps) * std::abs(x) / 4.0 +
           0.5 * std::max(tol.abs, tol.rel * std::abs(x));
    const double tol2 = 2.0 * tol1;
    if (std::abs(x - xm) <= tol2 - 0.5 * (b - a)) break;
    if (evals >= tol.max_evals)
      throw BudgetExhausted("minimize_scalar: evaluation budget exhausted");

    bool golden = true;
    if (std::abs(e) > tol1) {
      double r = (x - w) * (fx - fv);
      double q = (x - v) * (fx - fw);
      double p = (x - v) * q - (x - w) * r;
      q = 2.0 * (q - r);
      if (q > 0.0) p = -p;
      q = std::abs(q);
      const double etemp = e;
      e = d;
      if (std::abs(p) < std::abs(0.5 * q * etemp) && p > q * (a - x) &&
          p < q * (b - x)) {
        d = p / q;
        const double u = x + d;
        if (u - a < tol2 || b - u < tol2) d = xm >= x ? tol1 : -tol1;
        golden = false;
      }
    }
    if (golden) {
      e = (x >= xm ? a : b) - x;
      d = kGolden * e;
    }
    const double u = std::abs(d) >= tol1 ? x + d : x + (d > 0.0 ? tol1 : -tol1);
    const double fu = eval(u);
    if (fu <= fx) {
      if (u >= x) a = x; else b = x;
      v = w; fv = fw;
      w = x; fw = fx;
      x = u; fx = fu;
    } else {
      if (u < x) a = u; else b = u;
      if (fu <= fw || w == x) {
        v = w; fv = fw;
        w = u; fw = fu;
      } else if (fu <= fv || v == x || v == w) {
        v = u; fv = fu;
      }
    }
  }
  const double edge = 4.0 * tol1;
  const bool boundary = (x - lo) <= edge || (hi - x) <= edge;
  return {x, fx, boundary, evals};
}

double differentiate(const ScalarFunction& f, double r, int order,
                     const Tolerance& tol, double step, double scale) {
  tol.validate();
  if (order != 1 && order != 2)
    throw std::invalid_argument("differentiate: order must be 1 or 2");
  constexpr int kTable = 12;
  constexpr double kShrink = 1.4;
  constexpr double kShrink2 = kShrink * kShrink;

  double h = step > 0.0 ? step : 0.1 * std::max(std::abs(r), 1e-3 * scale);
  auto stencil = [&](double hh) {
    const double fp = f(r + hh);
    const double fm = f(r - hh);
    if (!std::isfinite(fp)) throw NonFiniteSample("differentiate", r + hh);
    if (!std::isfinite(fm)) throw NonFiniteSample("differentiate", r - hh);
    if (order == 1) return (fp - fm) / (2.0 * hh);
    const double f0 = f(r);
    if (!std::isfinite(f0)) throw NonFiniteSample("differentiate", r);
    return (fp - 2.0 * f0 + fm) / (hh * hh);
  };

  std::array<std::array<double, kTable>, kTable> tableau{};
  tableau[0][0] = stencil(h);
  double best = tableau[0][0];
  double best_err = std::numeric_limits<double>::max();
  for (int i = 1; i < kTable; ++i) {
    h /= kShrink;
    if (h <= 16.0 * kEps * std::max(std::abs(r), 1e-300))
      throw StepUnderflow("differentiate: step underflow relative to r");
    tableau[0][i] = stencil(h);
    double factor = kShrink2;
    for (int j = 1; j <= i; ++j) {
      tableau[j][i] = (tableau[j - 1][i] * factor - tableau[j - 1][i - 1]) /
                      (factor - 1.0);
      factor *= kShrink2;
      const double err =
          std::max(std::abs(tableau[j][i] - tableau[j - 1][i]),
                   std::abs(tableau[j][i] - tableau[j - 1][i - 1]));
      if (err <= best_err) {
        best_err = err;
        best = tableau[j][i];
      }
    }
    // Higher order made things worse: round-off has taken over.
    if (std::abs(tableau[i][i] - tableau[i - 1][i - 1]) >= 2.0 * best_err) break;
    if (best_err <= 0.01 * std::max(tol.abs, tol.rel * std::abs(best))) break;
  }
  return best;
}

std::vector<double> linear_grid(double lo, double hi, int count) {
  if (count < 1) throw std::invalid_argument("grid: count must be >= 1");
  std::vector<double> g(static_cast<std::size_t>(count));
  if (count == 1) {
    g[0] = lo;
    return g;
  }
  const double step = (hi - lo) / (count - 1);
  for (int i = 0; i < count; ++i) g[i] = lo + step * i;
  g.back() = hi;
  return g;
}

std::vector<double> geometric_grid(double lo, double hi, int count) {
  if (!(lo > 0.0) || !(hi > 0.0))
    throw std::invalid_argument("geometric grid: bounds must be > 0");
  auto g = linear_grid(std::log(lo), std::log(hi), count);
  for (auto& v : g) v = std::exp(v);
  g.front() = lo;
  if (count > 1) g.back() = hi;
  return g;
}

}  // namespace cqm::numerics
