#include "fracheat/mittag_leffler.hpp"

#include <algorithm>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/cos_pi.hpp>
#include <boost/math/special_functions/sin_pi.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "fracheat/error.hpp"
#include "fracheat/special.hpp"

namespace fracheat {

std::string_view to_string(MLMethod m) noexcept {
  switch (m) {
    case MLMethod::series: return "series";
    case MLMethod::asymptotic_neg: return "asymptotic_neg";
    case MLMethod::asymptotic_pos: return "asymptotic_pos";
    case MLMethod::contour_integral: return "contour_integral";
    case MLMethod::closed_form: return "closed_form";
  }
  return "unknown";
}

namespace ml {

double switch_radius(double alpha) noexcept { return std::max(10.0, std::pow(5.0, alpha)); }

}  // namespace ml

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kPi = std::numbers::pi;

bool is_nonpositive_integer(double y) { return y <= 0.0 && y == std::nearbyint(y); }
bool is_integer(double y) { return y == std::nearbyint(y); }

void check_params(MLParams p) {
  require(p.alpha > 0.0 && p.alpha <= 2.0, ErrorCode::UnsupportedOrder,
          "alpha must lie in (0, 2], got " + std::to_string(p.alpha));
  require(p.beta > 0.0 && std::isfinite(p.beta), ErrorCode::InvalidArgument,
          "beta must be positive, got " + std::to_string(p.beta));
}

// |z|^n / Gamma(y), computed in logs once either factor leaves double range.
double series_term_magnitude(double logz, int n, double y) {
  if (y <= 170.0 && n * logz < 700.0) return std::exp(n * logz) / std::tgamma(y);
  return std::exp(n * logz - log_abs_gamma(y));
}

struct AlgebraicTerm {
  double value = 0.0;
  // |x^-k| Gamma(1-y) / pi, which bounds |value| and ignores the sin(pi y)
  // factor that makes single terms deceptively small near a pole.
  double envelope = 0.0;
};

// Signed x^-k / Gamma(y) for the algebraic tail, y = beta - alpha k.
AlgebraicTerm algebraic_term(double logx, int k, double y) {
  AlgebraicTerm t;
  if (y >= 1.0) {
    t.value = std::exp(-k * logx) * rgamma(y);
    t.envelope = std::fabs(t.value);
    return t;
  }
  // 1/Gamma(y) = Gamma(1-y) sin(pi y) / pi with Gamma(1-y) > 0.
  t.envelope = std::exp(log_abs_gamma(1.0 - y) - k * logx) / kPi;
  if (is_nonpositive_integer(y)) return t;
  t.value = t.envelope * boost::math::sin_pi(y);
  return t;
}

struct AlgebraicSum {
  double value = 0.0;
  double first_omitted = 0.0;
  double max_term = 0.0;
  int terms = 0;

  // Optimal truncation leaves an error of the order of the smallest term,
  // up to a factor that stays below 2 in practice; plus rounding.
  double error_bound() const { return 2.0 * first_omitted + 4.0 * kEps * max_term; }
};

// -sum_{k>=1} sign^k x^-k / Gamma(beta - alpha k), sign = -1 on the negative axis.
AlgebraicSum algebraic_sum(MLParams p, double x, int sign, int n_terms, double scale) {
  constexpr int kMaxTerms = 1000;
  const double logx = std::log(x);
  AlgebraicSum out;
  auto term = [&](int k) {
    AlgebraicTerm t = algebraic_term(logx, k, p.beta - p.alpha * k);
    t.value = -t.value;
    if (sign < 0 && (k % 2 == 1)) t.value = -t.value;
    return t;
  };
  auto omitted = [&](int k) {
    for (int j = k; j < k + kMaxTerms; ++j) {
      if (!is_nonpositive_integer(p.beta - p.alpha * j)) return term(j).envelope;
    }
    return 0.0;
  };
  if (n_terms > 0) {
    for (int k = 1; k <= n_terms; ++k) {
      const double v = term(k).value;
      out.value += v;
      out.max_term = std::max(out.max_term, std::fabs(v));
    }
    out.terms = n_terms;
    out.first_omitted = omitted(n_terms + 1);
    return out;
  }
  double prev = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= kMaxTerms; ++k) {
    if (is_nonpositive_integer(p.beta - p.alpha * k)) continue;
    const AlgebraicTerm t = term(k);
    if (t.envelope > prev || t.envelope < 1e-18 * (std::fabs(out.value) + scale)) {
      out.first_omitted = t.envelope;
      return out;
    }
    out.value += t.value;
    out.max_term = std::max(out.max_term, std::fabs(t.value));
    out.terms = k;
    prev = t.envelope;
  }
  out.first_omitted = omitted(kMaxTerms + 1);
  return out;
}

struct Residue {
  double value = 0.0;
  double uncertainty = 0.0;
};

// Contribution of the poles s^alpha = -1 in the principal sheet, as a function of x.
Residue oscillatory_term(MLParams p, double x) {
  Residue r;
  if (p.alpha < 1.0) return r;
  const double t = std::pow(x, 1.0 / p.alpha);
  const double pref = std::pow(x, (1.0 - p.beta) / p.alpha);
  if (p.alpha == 1.0) {
    // Pole sits on the cut; exact for integer beta only.
    const double v = pref * std::exp(-x) * std::cos(kPi * (1.0 - p.beta));
    r.value = v;
    if (!is_integer(p.beta)) r.uncertainty = pref * std::exp(-x);
    return r;
  }
  const double w = kPi / p.alpha;
  r.value = (2.0 / p.alpha) * pref * std::exp(t * std::cos(w)) *
            std::cos(t * std::sin(w) + w * (1.0 - p.beta));
  return r;
}

boost::math::quadrature::tanh_sinh<double>& integrator() {
  thread_local boost::math::quadrature::tanh_sinh<double> ts;
  return ts;
}

constexpr double kQuadTol = 1e-14;

// E_{1,beta}(-x) for non-integer beta > 1:
//   1/Gamma(beta-1) int_0^1 exp(-x s) (1-s)^(beta-2) ds
MLEvalResult alpha_one_integral(double beta, double x) {
  MLEvalResult r;
  r.method = MLMethod::contour_integral;
  if (beta < 1.0) {
    // E_{1,b}(z) = 1/Gamma(b) + z E_{1,b+1}(z)
    MLEvalResult up = alpha_one_integral(beta + 1.0, x);
    r.value = rgamma(beta) - x * up.value;
    r.est_abs_error = x * up.est_abs_error;
    r.terms_used = up.terms_used;
    return r;
  }
  auto f = [&](double s) {
    const double v = std::exp(-x * s) * std::pow(1.0 - s, beta - 2.0);
    return std::isfinite(v) ? v : 0.0;
  };
  double err = 0.0;
  double l1 = 0.0;
  std::size_t levels = 0;
  const double v = integrator().integrate(f, 0.0, 1.0, kQuadTol, &err, &l1, &levels);
  const double g = rgamma(beta - 1.0);
  r.value = g * v;
  r.est_abs_error = std::fabs(g) * err;
  r.terms_used = static_cast<int>(levels);
  return r;
}

// E_{1,n}(-x) = (-x)^(1-n) [exp(-x) - sum_{k<n-1} (-x)^k / k!]
double alpha_one_closed(int n, double x) {
  if (n == 1) return std::exp(-x);
  if (n == 2) return -std::expm1(-x) / x;
  double partial = 0.0;
  double term = 1.0;
  for (int k = 0; k <= n - 2; ++k) {
    partial += term;
    term *= -x / (k + 1);
  }
  return (std::exp(-x) - partial) / std::pow(-x, n - 1);
}

}  // namespace

MLEvalResult ml_series(MLParams p, double z, double tol) {
  check_params(p);
  require(tol > 0.0, ErrorCode::InvalidArgument, "series tolerance must be positive");
  MLEvalResult r;
  r.method = MLMethod::series;
  if (z == 0.0) {
    r.value = rgamma(p.beta);
    r.terms_used = 1;
    return r;
  }
  const double az = std::fabs(z);
  const double logz = std::log(az);
  const bool alternating = z < 0.0;
  double sum = 0.0;
  double max_abs = 0.0;
  double next = series_term_magnitude(logz, 0, p.beta);
  for (int n = 0; n < ml::kSeriesTermCap; ++n) {
    const double m = next;
    sum += (alternating && (n % 2 == 1)) ? -m : m;
    max_abs = std::max(max_abs, m);
    const double y1 = p.alpha * (n + 1) + p.beta;
    next = series_term_magnitude(logz, n + 1, y1);
    const double q = az * std::exp(log_abs_gamma(y1) - log_abs_gamma(y1 + p.alpha));
    if (q < 1.0) {
      const double bound = next / (1.0 - q);
      if (bound <= tol) {
        r.value = sum;
        r.terms_used = n + 1;
        r.est_abs_error = bound;
        if (alternating && max_abs > ml::kCancellationGuard * std::fabs(sum)) {
          r.est_abs_error += 8.0 * kEps * max_abs * std::sqrt(n + 1.0);
        }
        return r;
      }
    }
  }
  throw Error(ErrorCode::TermCapExceeded,
              "series for E_{" + std::to_string(p.alpha) + "," + std::to_string(p.beta) +
                  "}(" + std::to_string(z) + ") did not reach tolerance within " +
                  std::to_string(ml::kSeriesTermCap) + " terms");
}

MLEvalResult ml_asymptotic_neg(MLParams p, double x, int n_terms) {
  check_params(p);
  require(x >= 1.0, ErrorCode::OutOfRegime,
          "large-argument expansion needs x >= 1, got " + std::to_string(x));
  MLEvalResult r;
  r.method = MLMethod::asymptotic_neg;
  const Residue res = oscillatory_term(p, x);
  const AlgebraicSum alg = algebraic_sum(p, x, -1, n_terms, std::fabs(res.value));
  r.value = res.value + alg.value;
  r.est_abs_error = alg.error_bound() + res.uncertainty + 4.0 * kEps * std::fabs(res.value);
  r.terms_used = alg.terms;
  return r;
}

MLEvalResult ml_asymptotic_pos(MLParams p, double x, int n_terms) {
  check_params(p);
  require(x >= 1.0, ErrorCode::OutOfRegime,
          "large-argument expansion needs x >= 1, got " + std::to_string(x));
  MLEvalResult r;
  r.method = MLMethod::asymptotic_pos;
  const double lead = std::pow(x, (1.0 - p.beta) / p.alpha) * std::exp(std::pow(x, 1.0 / p.alpha)) /
                      p.alpha;
  const AlgebraicSum alg = algebraic_sum(p, x, +1, n_terms, std::fabs(lead));
  r.value = lead + alg.value;
  r.est_abs_error = alg.error_bound();
  r.terms_used = alg.terms;
  return r;
}

namespace {

// Exponent q such that w^q turns an x^p (p > -1) endpoint into a smooth one.
double endpoint_power(double p) {
  if (p >= 0.0) return 1.0;
  return std::min(1.0 / (1.0 + p), 40.0);
}

}  // namespace

MLEvalResult ml_contour(MLParams p, double x) {
  check_params(p);
  require(x > 0.0, ErrorCode::InvalidArgument, "branch-cut integral needs x > 0");
  const double a = p.alpha;

  if (a == 1.0) {
    if (is_integer(p.beta)) {
      MLEvalResult r;
      r.method = MLMethod::closed_form;
      r.value = alpha_one_closed(static_cast<int>(p.beta), x);
      return r;
    }
    return alpha_one_integral(p.beta, x);
  }

  if (p.beta >= 1.0 + a) {
    // E_{a,b}(z) = (E_{a,b-a}(z) - 1/Gamma(b-a)) / z
    MLEvalResult lower = ml_contour({a, p.beta - a}, x);
    lower.value = (rgamma(p.beta - a) - lower.value) / x;
    lower.est_abs_error /= x;
    return lower;
  }

  MLEvalResult r;
  r.method = MLMethod::contour_integral;
  const double t = std::pow(x, 1.0 / a);
  const double sb = boost::math::sin_pi(p.beta);
  const double sba = boost::math::sin_pi(p.beta - a);
  const double pw = (1.0 - p.beta) / a;
  double err = 0.0;
  double l1 = 0.0;
  std::size_t levels = 0;
  double integral = 0.0;

  if (a == 2.0) {
    // Denominator degenerates to (u+1)^2; with u = v^2:
    //   I = sin(pi b)/pi int_0^inf v^(2-b) exp(-t v) / (v^2 + 1) dv
    if (sb != 0.0) {
      // v = w^q removes the v^(2-b) endpoint singularity
      const double q = endpoint_power(2.0 - p.beta);
      auto f = [&](double w) {
        const double v = std::pow(w, q);
        const double e = t * v;
        if (e > 745.0 || v <= 0.0) return 0.0;
        const double val = q * std::pow(w, q * (3.0 - p.beta) - 1.0) * std::exp(-e) / (v * v + 1.0);
        return std::isfinite(val) ? val : 0.0;
      };
      integral = integrator().integrate(f, 0.0, std::numeric_limits<double>::infinity(), kQuadTol,
                                        &err, &l1, &levels) *
                 sb / kPi;
      err *= std::fabs(sb) / kPi;
    }
  } else {
    // I = 1/(a pi) int_0^inf u^pw [u sin(pi b) + sin(pi(b-a))] exp(-t u^(1/a)) / ((u+c)^2 + s^2) du
    // and u + c = s tan(theta) flattens the near-pole peak when a is close to 1 or 2.
    const double c = boost::math::cos_pi(a);
    const double s = std::fabs(boost::math::sin_pi(a));
    const double theta0 = std::atan2(c, s);
    const double phimax = kPi / 2.0 - theta0;
    const double cos0 = std::cos(theta0);
    // phi = w^q removes the u^pw endpoint singularity
    const double q = endpoint_power(pw);
    auto f = [&](double w) {
      const double phi = std::pow(w, q);
      const double den = std::sin(phimax - phi) * cos0;
      if (den <= 0.0) return 0.0;
      const double u = s * std::sin(phi) / den;
      if (!(u > 0.0) || !std::isfinite(u)) return 0.0;
      const double e = t * std::pow(u, 1.0 / a);
      if (e > 745.0) return 0.0;
      const double jac = q == 1.0 ? 1.0 : q * std::pow(w, q - 1.0);
      const double val = jac * std::pow(u, pw) * (u * sb + sba) * std::exp(-e);
      return std::isfinite(val) ? val : 0.0;
    };
    const double scale = 1.0 / (a * kPi * s);
    integral = integrator().integrate(f, 0.0, std::pow(phimax, 1.0 / q), kQuadTol, &err, &l1, &levels) * scale;
    err *= scale;
  }

  const double pref = std::pow(t, 1.0 - p.beta);
  const Residue res = oscillatory_term(p, x);
  r.value = pref * integral + res.value;
  r.est_abs_error = pref * err;
  r.terms_used = static_cast<int>(levels);
  return r;
}

namespace {

// Closed forms that are free of cancellation for every x > 0.
bool try_closed_form(MLParams p, double x, MLEvalResult& out) {
  out.method = MLMethod::closed_form;
  out.est_abs_error = 0.0;
  out.terms_used = 0;
  if (p.alpha == 2.0 && p.beta == 1.0) {
    out.value = std::cos(std::sqrt(x));
    return true;
  }
  if (p.alpha == 2.0 && p.beta == 2.0) {
    const double r = std::sqrt(x);
    out.value = std::sin(r) / r;
    return true;
  }
  if (p.alpha == 1.0 && p.beta == 1.0) {
    out.value = std::exp(-x);
    return true;
  }
  return false;
}

// Series is attempted only where its largest term stays moderate.
bool series_feasible(MLParams p, double az) {
  return az <= ml::switch_radius(p.alpha) && std::pow(az, 1.0 / p.alpha) <= 30.0;
}

constexpr double kSeriesTol = 1e-15;
constexpr double kRoundingBudget = 1e-12;

bool try_series(MLParams p, double z, double tol, MLEvalResult& out) {
  try {
    MLEvalResult r = ml_series(p, z, tol);
    // Re-derive the rounding estimate regardless of the guard threshold.
    const double az = std::fabs(z);
    double max_abs = 0.0;
    if (z < 0.0) {
      const double logz = std::log(az);
      for (int n = 0; n < r.terms_used; ++n) {
        max_abs = std::max(max_abs, series_term_magnitude(logz, n, p.alpha * n + p.beta));
      }
      if (8.0 * kEps * max_abs > kRoundingBudget) return false;
    }
    out = r;
    return true;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::TermCapExceeded) throw;
    return false;
  }
}

}  // namespace

MLEvalResult ml_eval(MLParams p, double z) {
  check_params(p);
  require(std::isfinite(z), ErrorCode::NonFiniteValue, "argument must be finite");
  MLEvalResult r;
  if (z == 0.0) {
    r.value = rgamma(p.beta);
    r.terms_used = 1;
    return r;
  }
  const double az = std::fabs(z);
  if (z > 0.0) {
    if (std::pow(az, 1.0 / p.alpha) <= 30.0) {
      // Terms are positive; scale the tolerance with the size of the result.
      const double approx = std::exp(std::pow(az, 1.0 / p.alpha)) / p.alpha;
      if (try_series(p, z, kSeriesTol * std::max(1.0, approx), r)) return r;
    }
    return ml_asymptotic_pos(p, az);
  }

  if (try_closed_form(p, az, r)) return r;
  if (series_feasible(p, az) && try_series(p, z, kSeriesTol, r)) return r;
  if (p.alpha == 1.0 && is_integer(p.beta)) return ml_contour(p, az);
  if (az >= 1.0) {
    MLEvalResult a = ml_asymptotic_neg(p, az);
    if (a.est_abs_error <= 1e-14) return a;
  }
  if (std::pow(az, 1.0 / p.alpha) < 1e12) return ml_contour(p, az);
  // Tiny alpha with large x: the algebraic tail is all that is left.
  return ml_asymptotic_neg(p, az);
}

double ml_derivative(MLParams p, double z) {
  check_params(p);
  if (z == 0.0) return rgamma(p.alpha + p.beta);
  const double az = std::fabs(z);
  if (series_feasible(p, az)) {
    // sum_{n>=1} n z^(n-1) / Gamma(a n + b)
    const double logz = std::log(az);
    const bool alternating = z < 0.0;
    double sum = 0.0;
    double max_abs = 0.0;
    bool converged = false;
    for (int n = 1; n < ml::kSeriesTermCap; ++n) {
      const double y = p.alpha * n + p.beta;
      const double m = n * series_term_magnitude(logz, n - 1, y);
      sum += (alternating && (n % 2 == 0)) ? -m : m;
      max_abs = std::max(max_abs, m);
      const double y1 = y + p.alpha;
      const double next = (n + 1) * series_term_magnitude(logz, n, y1);
      const double q = az * (n + 2.0) / (n + 1.0) *
                       std::exp(log_abs_gamma(y1) - log_abs_gamma(y1 + p.alpha));
      if (q < 1.0 && next / (1.0 - q) <= kSeriesTol * std::max(1.0, std::fabs(sum))) {
        converged = true;
        break;
      }
    }
    if (converged && 8.0 * kEps * max_abs <= kRoundingBudget * std::max(1.0, std::fabs(sum))) {
      return sum;
    }
  }
  if (p.beta == 1.0) return ml_eval({p.alpha, p.alpha}, z).value / p.alpha;
  // a z E'_{a,b} = E_{a,b-1} - (b-1) E_{a,b}; lift b-1 into (0, inf) by
  // E_{a,g}(z) = 1/Gamma(g) + z E_{a,g+a}(z).
  double g = p.beta - 1.0;
  double lower;
  if (g > 0.0) {
    lower = ml_eval({p.alpha, g}, z).value;
  } else {
    // g in (-1, 0]: one lift suffices only when g + a > 0.
    int lifts = 0;
    double gg = g;
    while (gg <= 0.0) {
      gg += p.alpha;
      ++lifts;
    }
    double acc = ml_eval({p.alpha, gg}, z).value;
    for (int k = lifts - 1; k >= 0; --k) acc = rgamma(g + k * p.alpha) + z * acc;
    lower = acc;
  }
  return (lower - (p.beta - 1.0) * ml_eval(p, z).value) / (p.alpha * z);
}

double ml_zero_smallest(double alpha) {
  require(alpha > 0.0 && alpha <= 2.0, ErrorCode::UnsupportedOrder,
          "alpha must lie in (0, 2], got " + std::to_string(alpha));
  require(alpha > 1.0, ErrorCode::NoZero,
          "E_{a,1}(-x^a) is positive for a <= 1, got a = " + std::to_string(alpha));
  auto f = [alpha](double x) { return ml_eval({alpha, 1.0}, -std::pow(x, alpha)).value; };
  constexpr double kStep = 0.01;
  constexpr double kMaxX = 200.0;
  double lo = 0.0;
  double flo = 1.0;
  double hi = kStep;
  double fhi = f(hi);
  while (fhi > 0.0) {
    lo = hi;
    flo = fhi;
    hi += kStep;
    if (hi > kMaxX) {
      throw Error(ErrorCode::NoZero,
                  "no sign change below x = " + std::to_string(kMaxX) + " for a = " + std::to_string(alpha));
    }
    fhi = f(hi);
  }
  (void)flo;
  for (int it = 0; it < 200 && hi - lo > 1e-14 * std::max(1.0, hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double ml_laplace_pair(MLParams p, int n, double c, int sign, double pvar) {
  check_params(p);
  require(n >= 0, ErrorCode::InvalidArgument, "derivative order must be non-negative");
  require(sign == 1 || sign == -1, ErrorCode::InvalidArgument, "sign must be +1 or -1");
  require(pvar > 0.0, ErrorCode::DivergentTransform, "transform variable must be positive");
  const double pa = std::pow(pvar, p.alpha);
  const double den = pa - sign * c;
  require(sign < 0 ? den > 0.0 : pa > c, ErrorCode::DivergentTransform,
          "need p^alpha > " + std::to_string(sign * c) + " for convergence");
  return std::tgamma(n + 1.0) * std::pow(pvar, p.alpha - p.beta) / std::pow(den, n + 1);
}

}  // namespace fracheat
