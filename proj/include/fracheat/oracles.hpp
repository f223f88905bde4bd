#pragma once

// Reference solutions that share no code path with the Mittag-Leffler mode
// series: product-integration quadrature of the Caputo derivative and the
// Riemann-Liouville integral, an implicit L1 finite-difference solver, and the
// integer-order mode series.

#include <optional>
#include <vector>

#include "fracheat/spectral.hpp"

namespace fracheat {

/// Uniform space-time grid. nx must be odd so the midpoint is a node.
struct FDGrid {
  int nt = 2000;
  int nx = 201;
  double t_max = 1.0;

  double dt() const { return t_max / nt; }
};

/// Smallest grids fd_solve accepts.
inline constexpr int kMinTimeSteps = 64;
inline constexpr int kMinSpacePoints = 33;

/// Caputo derivative of order alpha in (0, 2) at t = n dt, from samples
/// f[j] = f(j dt). The n-th derivative (n = ceil(alpha)) is taken piecewise
/// constant from finite differences and integrated exactly against the kernel.
/// t must coincide with a grid node. For alpha > 1 the derivative depends on
/// f'(0); pass it when known, otherwise it is estimated from the first samples
/// (accurate only when f is smooth at 0).
double caputo_quadrature(const std::vector<double>& f, double dt, double alpha, double t,
                         std::optional<double> initial_slope = std::nullopt);

/// Riemann-Liouville integral of order beta > 0 at x = n dx with f linearly
/// interpolated between samples.
double riemann_liouville_integral(const std::vector<double>& f, double dx, double beta, double x);

/// Solves d^a T/dt^a = D T_xx - reaction T + source on [0, L] with the
/// problem's boundary condition. L1 scheme for a < 1 (order 2 - a in time for
/// solutions smooth in t), BDF2 at a = 1; for 1 < a <= 2 the velocity
/// v = dT/dt is stepped with L1 applied to its Caputo derivative of order a - 1.
/// Mittag-Leffler solutions start like t^a and converge at first order in dt
/// for every a != 1.
/// Output is linearly interpolated onto the requested times and xs.
SolutionField fd_solve(const DiffusionProblem& problem, double reaction, double source, const FDGrid& grid,
                       const std::vector<double>& times, const std::vector<double>& xs);

/// fd_solve with an explicit initial function instead of the problem's profile.
template <class F>
SolutionField fd_solve_with(const DiffusionProblem& problem, double reaction, double source,
                            const FDGrid& grid, const std::vector<double>& times,
                            const std::vector<double>& xs, F&& initial);

/// Exponential (a = 1) or cosine (a = 2) mode series on the spectrum of the
/// problem. Throws UnsupportedOrder otherwise.
SolutionField classical_solutions(const DiffusionProblem& problem, const std::vector<double>& times,
                                  const std::vector<double>& xs, int M = kDefaultModes);

/// Same, for a given spectrum.
SolutionField classical_solutions(const DiffusionProblem& problem, const ModeSpectrum& spectrum,
                                  const std::vector<double>& times, const std::vector<double>& xs);

/// ||a - b|| / ||b|| over all entries.
double relative_l2(const SolutionField& a, const SolutionField& b);

namespace detail {
SolutionField fd_solve_impl(const DiffusionProblem& problem, double reaction, double source, const FDGrid& grid,
                            const std::vector<double>& times, const std::vector<double>& xs,
                            const std::vector<double>& initial);
}  // namespace detail

template <class F>
SolutionField fd_solve_with(const DiffusionProblem& problem, double reaction, double source,
                            const FDGrid& grid, const std::vector<double>& times,
                            const std::vector<double>& xs, F&& initial) {
  std::vector<double> init(static_cast<std::size_t>(grid.nx));
  for (int i = 0; i < grid.nx; ++i) init[i] = initial(problem.L * i / (grid.nx - 1));
  return detail::fd_solve_impl(problem, reaction, source, grid, times, xs, init);
}

}  // namespace fracheat
