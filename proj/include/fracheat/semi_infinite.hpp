#pragma once

// Heat equation on the half line x >= 0 with u(t, 0) = 1 and u(0, x) = T,
// solved three independent ways.

namespace fracheat {

struct SemiInfProblem {
  double D = 1.0;
  double T_init = 0.0;
};

/// 1 + (T - 1) erf(x / sqrt(4 D t)).
double erf_solution(const SemiInfProblem& p, double t, double x);

/// Whole-line heat kernel applied to the antisymmetrically continued data
/// (u(0, -y) = 2 - T), integrated over y in [0, x + 12 sqrt(4 D t)] with
/// composite Gauss-Legendre using about quad_n nodes. Throws
/// QuadratureUnderResolved when halving the node count moves the result by
/// more than 1e-6.
double images_solution(const SemiInfProblem& p, double t, double x, int quad_n = 1024);

/// Same integrand evaluated at negative x, for the antisymmetry check.
double images_extended(const SemiInfProblem& p, double t, double x, int quad_n = 1024);

/// (1 - T)/s exp(-sqrt(s/D) x) + T/s at real s > 0.
double laplace_transform_value(const SemiInfProblem& p, double s, double x);

/// Fixed-Talbot inversion of the transform with `nodes` contour nodes.
/// Throws InversionUnstable on non-finite intermediates.
double laplace_solution(const SemiInfProblem& p, double t, double x, int nodes = 32);

/// Exact slope d u / d x at x = 0, (T - 1) / sqrt(pi D t).
double boundary_slope(const SemiInfProblem& p, double t);

}  // namespace fracheat
