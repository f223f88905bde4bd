#include "fracheat/special.hpp"

#include <boost/math/special_functions/sin_pi.hpp>
#include <cmath>
#include <limits>
#include <numbers>

namespace fracheat {

double rgamma(double x) noexcept {
  if (x <= 0.0 && x == std::nearbyint(x)) return 0.0;
  if (x > 171.5) return 0.0;
  if (x > -170.0) return 1.0 / std::tgamma(x);
  // Reflection keeps the magnitude finite as long as Gamma(1-x) is.
  const double g = std::tgamma(1.0 - x);
  return g * boost::math::sin_pi(x) / std::numbers::pi;
}

double log_abs_gamma(double x) noexcept {
#if defined(__GLIBC__)
  int sign = 0;
  return ::lgamma_r(x, &sign);
#else
  return std::lgamma(x);
#endif
}

namespace {

constexpr double kTwoOverSqrtPi = 2.0 * std::numbers::inv_sqrtpi;

double erf_series(double x) noexcept {
  // erf(x) = 2/sqrt(pi) exp(-x^2) sum_n (2x^2)^n x / (2n+1)!!
  const double two_x2 = 2.0 * x * x;
  double term = x;
  double sum = x;
  for (int n = 1; n < 200; ++n) {
    term *= two_x2 / (2.0 * n + 1.0);
    sum += term;
    if (term < sum * 1e-17) break;
  }
  return kTwoOverSqrtPi * std::exp(-x * x) * sum;
}

double erfc_continued_fraction(double x) noexcept {
  // erfc(x) = exp(-x^2)/sqrt(pi) / (x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
  constexpr double tiny = 1e-300;
  double f = x;
  double c = x;
  double d = 0.0;
  for (int n = 1; n < 500; ++n) {
    const double a = 0.5 * n;
    d = x + a * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = x + a / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = c * d;
    f *= delta;
    if (std::fabs(delta - 1.0) < 1e-16) break;
  }
  return std::exp(-x * x) * std::numbers::inv_sqrtpi / f;
}

constexpr double kSeriesLimit = 2.5;

}  // namespace

double erf(double x) noexcept {
  if (std::isnan(x)) return x;
  const double ax = std::fabs(x);
  double r;
  if (ax < kSeriesLimit) {
    r = erf_series(ax);
  } else if (ax < 6.5) {
    r = 1.0 - erfc_continued_fraction(ax);
  } else {
    r = 1.0;
  }
  return x < 0.0 ? -r : r;
}

double erfc(double x) noexcept {
  if (std::isnan(x)) return x;
  if (x < 0.0) return 2.0 - erfc(-x);
  if (x < kSeriesLimit) return 1.0 - erf_series(x);
  if (x > 27.3) return 0.0;
  return erfc_continued_fraction(x);
}

}  // namespace fracheat
