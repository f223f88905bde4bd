#pragma once

// Separation-of-variables solution of the time-fractional diffusion equation
//   d^a T / dt^a = D d^2T/dx^2,  0 < a <= 2,  x in [0, L]
// as a mode series
//   T(t,x) = offset + sum_m [f_m E_{a,1}(-r_m t^a) + f'_m t E_{a,2}(-r_m t^a)] trig(k_m x + phase_m).

#include <cstdint>
#include <string>
#include <vector>

namespace fracheat {

enum class ProfileKind { linear_100, quadratic, quartic, sine_pi, custom };

struct InitialProfile {
  ProfileKind kind = ProfileKind::linear_100;
  /// Height reached at x = L by linear_100. Only linear_100 uses it.
  double amplitude = 100.0;
  /// Uniform samples on [0, L] for custom, first and last at the endpoints.
  std::vector<double> samples;
};

enum class BoundaryKind { dirichlet, neumann };

struct BoundaryCondition {
  BoundaryKind kind = BoundaryKind::dirichlet;
  /// Value held at both ends (Dirichlet) or ignored (zero-flux Neumann).
  double value = 0.0;
};

struct DiffusionProblem {
  double D = 1.0;
  double L = 1.0;
  double alpha = 1.0;
  InitialProfile profile;
  /// Uniform samples of dT/dt(0, x) on [0, L]; empty means stationary.
  std::vector<double> initial_velocity;
  BoundaryCondition bc;
};

/// Throws ValidationError when an invariant of the problem is violated.
void validate(const DiffusionProblem& p);

/// Boundary condition matching the natural basis of the profile: Neumann for
/// the cos families, Dirichlet otherwise.
BoundaryCondition natural_bc(ProfileKind kind);

enum class Trig { sin, cos };

struct Mode {
  int m = 1;
  double k = 0.0;       // spatial wavenumber
  double f = 0.0;       // E_{a,1} coefficient
  double fprime = 0.0;  // t E_{a,2} coefficient
  Trig trig = Trig::sin;
  double rate = 0.0;    // E argument is -rate * t^a
  double phase = 0.0;   // trig(k x + phase)
};

struct ModeSpectrum {
  double offset = 0.0;
  std::vector<Mode> modes;
};

enum class Summation { partial, fejer };

struct SolutionField {
  std::vector<double> times;
  std::vector<double> xs;
  /// Row-major, times.size() x xs.size().
  std::vector<double> values;
  int fejer_order = 0;
  std::uint64_t problem_hash = 0;
  int truncation = 0;
  Summation summation = Summation::partial;
  /// Largest est_abs_error reported by any Mittag-Leffler call.
  double max_ml_error = 0.0;

  double at(std::size_t it, std::size_t ix) const { return values[it * xs.size() + ix]; }
  double& at(std::size_t it, std::size_t ix) { return values[it * xs.size() + ix]; }
};

inline constexpr int kDefaultModes = 500;

/// Analytic coefficients for the built-in profiles, Simpson/Richardson
/// projection for custom ones. Custom spectra stop at (samples-1)/4 modes,
/// beyond which the samples cannot resolve the basis.
ModeSpectrum fourier_coeffs(const DiffusionProblem& problem, int M);

/// The initial function whose series fourier_coeffs returns. For the cos
/// families this is the t = 0 limit of the series starting at n = 2.
double initial_profile_value(const DiffusionProblem& problem, double x);

/// Fejer weights are 1 - j/(order+1) for the j-th listed mode. order <= 0
/// uses every mode.
SolutionField evaluate(const DiffusionProblem& problem, const ModeSpectrum& spectrum,
                       const std::vector<double>& times, const std::vector<double>& xs,
                       Summation summation = Summation::partial, int order = 0);

/// Sin spectrum for T(0,x) = sin(pi x/L), dT/dt(0,x) = (pi/L) cos(pi x/L),
/// projected numerically onto the Dirichlet basis. The rate uses D.
ModeSpectrum nonstationary_spectrum(double L, int M, double D = 1.0);

/// Problem carrying the samples that nonstationary_spectrum projects.
DiffusionProblem nonstationary_problem(double L, double D, double alpha, int samples = 1025);

/// 2 pi / sin(pi/a) * (D n^2 pi^2 / L^2)^(-1/a), 1 < a <= 2.
double transient_period(double alpha, double D, double L, int n);

/// -1/cos(pi/a) * (D n^2 pi^2 / L^2)^(-1/a); +inf at a = 2.
double damping_time(double alpha, double D, double L, int n);

struct TimescaleEntry {
  int n;
  double period;
  double damping;
};

std::vector<TimescaleEntry> timescales(double alpha, double D, double L, int n_max);

/// (max of the truncated series near the jump - jump top) / jump height at
/// t = 0. Throws NoJump when the spectrum belongs to a continuous profile.
double gibbs_overshoot(const ModeSpectrum& spectrum, double L, int truncation,
                       Summation summation = Summation::partial);

struct CrossoverResult {
  double t_cross = 0.0;
  double spread = 0.0;
  std::vector<double> times;
  std::vector<double> spreads;
};

struct CrossoverOptions {
  int n_times = 200;
  int n_xs = 101;
  int modes = 200;
};

/// Time minimising the largest pairwise L2 distance between the profiles
/// evolved with each alpha (all alphas in (0, 1], at least three).
CrossoverResult crossover_time(const DiffusionProblem& problem, const std::vector<double>& alphas,
                               const CrossoverOptions& opt = {});

/// Spread curve used by crossover_time, at arbitrary times.
std::vector<double> profile_spread(const DiffusionProblem& problem, const std::vector<double>& alphas,
                                   const std::vector<double>& times, const CrossoverOptions& opt = {});

std::uint64_t problem_hash(const DiffusionProblem& p);

std::string to_string(ProfileKind k);
ProfileKind profile_from_string(const std::string& s);

/// Uniform grid of n points on [a, b].
std::vector<double> linspace(double a, double b, int n);

/// Discrete L2 norm with trapezoid weights on a uniform grid.
double l2_norm(const std::vector<double>& v, double dx);

}  // namespace fracheat
