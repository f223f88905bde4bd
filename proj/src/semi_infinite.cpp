#include "fracheat/semi_infinite.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "fracheat/error.hpp"
#include "fracheat/special.hpp"

namespace fracheat {

namespace {

constexpr double kPi = std::numbers::pi;

void check(const SemiInfProblem& p, double t) {
  require(p.D > 0.0, ErrorCode::ValidationError, "D must be positive");
  require(t > 0.0, ErrorCode::InvalidArgument, "t must be positive");
}

// int_0^R [T G(x - y) + (2 - T) G(x + y)] dy over `panels` 10-point panels
double image_integral(const SemiInfProblem& p, double t, double x, int panels) {
  const double s2 = 4.0 * p.D * t;
  const double norm = 1.0 / std::sqrt(kPi * s2);
  auto kernel = [&](double y) {
    const double a = x - y;
    const double b = x + y;
    return norm * (p.T_init * std::exp(-a * a / s2) + (2.0 - p.T_init) * std::exp(-b * b / s2));
  };
  const double R = std::fabs(x) + 12.0 * std::sqrt(s2);
  const double h = R / panels;
  double sum = 0.0;
  for (int i = 0; i < panels; ++i) {
    sum += boost::math::quadrature::gauss<double, 10>::integrate(kernel, i * h, (i + 1) * h);
  }
  return sum;
}

double images_checked(const SemiInfProblem& p, double t, double x, int quad_n) {
  check(p, t);
  require(quad_n >= 256, ErrorCode::InvalidArgument, "quad_n must be at least 256");
  const int panels = (quad_n + 9) / 10;
  const double fine = image_integral(p, t, x, panels);
  const double coarse = image_integral(p, t, x, (panels + 1) / 2);
  require(std::fabs(fine - coarse) <= 1e-6, ErrorCode::QuadratureUnderResolved,
          "image integral changed by " + std::to_string(std::fabs(fine - coarse)) + " when halving the nodes");
  return fine;
}

}  // namespace

double erf_solution(const SemiInfProblem& p, double t, double x) {
  check(p, t);
  return 1.0 + (p.T_init - 1.0) * erf(x / std::sqrt(4.0 * p.D * t));
}

double images_solution(const SemiInfProblem& p, double t, double x, int quad_n) {
  require(x >= 0.0, ErrorCode::InvalidArgument, "x must be >= 0");
  return images_checked(p, t, x, quad_n);
}

double images_extended(const SemiInfProblem& p, double t, double x, int quad_n) {
  return images_checked(p, t, x, quad_n);
}

double laplace_transform_value(const SemiInfProblem& p, double s, double x) {
  require(s > 0.0 && p.D > 0.0, ErrorCode::InvalidArgument, "need s > 0 and D > 0");
  return (1.0 - p.T_init) / s * std::exp(-std::sqrt(s / p.D) * x) + p.T_init / s;
}

double laplace_solution(const SemiInfProblem& p, double t, double x, int nodes) {
  check(p, t);
  require(nodes >= 4, ErrorCode::InvalidArgument, "need at least four contour nodes");
  using cd = std::complex<double>;
  auto F = [&](cd s) { return (1.0 - p.T_init) / s * std::exp(-std::sqrt(s / p.D) * x) + p.T_init / s; };
  const int M = nodes;
  const double r = 2.0 * M / (5.0 * t);
  double sum = 0.5 * std::exp(r * t) * F(cd(r, 0.0)).real();
  for (int k = 1; k < M; ++k) {
    const double th = k * kPi / M;
    const double cot = std::cos(th) / std::sin(th);
    const cd s(r * th * cot, r * th);
    const double sigma = th + (th * cot - 1.0) * cot;
    const cd term = std::exp(t * s) * F(s) * cd(1.0, sigma);
    require(std::isfinite(term.real()) && std::isfinite(term.imag()), ErrorCode::InversionUnstable,
            "non-finite contour term at node " + std::to_string(k));
    sum += term.real();
  }
  const double v = r / M * sum;
  require(std::isfinite(v), ErrorCode::InversionUnstable, "non-finite inversion result");
  return v;
}

double boundary_slope(const SemiInfProblem& p, double t) {
  check(p, t);
  return (p.T_init - 1.0) / std::sqrt(kPi * p.D * t);
}

}  // namespace fracheat
