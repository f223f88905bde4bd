#include "fracheat/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fracheat/error.hpp"

namespace fracheat {

namespace {

int grid_index(double t, double dt, std::size_t n_samples) {
  const double u = t / dt;
  const double r = std::nearbyint(u);
  require(std::fabs(u - r) <= 1e-8 * std::max(1.0, r), ErrorCode::InvalidArgument,
          "t = " + std::to_string(t) + " is not a grid node");
  require(r >= 0.0 && r < static_cast<double>(n_samples), ErrorCode::InvalidArgument,
          "t = " + std::to_string(t) + " lies outside the sampled range");
  return static_cast<int>(r);
}

// L1 weights b_k = (k+1)^(1-a) - k^(1-a)
std::vector<double> l1_weights(double a, int n) {
  std::vector<double> b(static_cast<std::size_t>(std::max(n, 1)));
  for (int k = 0; k < n; ++k) b[k] = std::pow(k + 1.0, 1.0 - a) - std::pow(static_cast<double>(k), 1.0 - a);
  return b;
}

// sum_{j<n} b_{n-1-j} (g_{j+1} - g_j) scaled to the Caputo derivative of order a in (0, 1]
double l1_caputo(const std::vector<double>& g, double dt, double a, int n) {
  const auto b = l1_weights(a, n);
  double s = 0.0;
  for (int j = 0; j < n; ++j) s += b[n - 1 - j] * (g[j + 1] - g[j]);
  return s * std::pow(dt, -a) / std::tgamma(2.0 - a);
}

// Constant tridiagonal system, factored once.
struct Tridiag {
  std::vector<double> lower, diag, upper;
  std::vector<double> cp, inv;

  void factor() {
    const std::size_t n = diag.size();
    cp.assign(n, 0.0);
    inv.assign(n, 0.0);
    double d = diag[0];
    inv[0] = 1.0 / d;
    cp[0] = n > 1 ? upper[0] * inv[0] : 0.0;
    for (std::size_t i = 1; i < n; ++i) {
      d = diag[i] - lower[i] * cp[i - 1];
      inv[i] = 1.0 / d;
      cp[i] = i + 1 < n ? upper[i] * inv[i] : 0.0;
    }
  }

  void solve(std::vector<double>& rhs) const {
    const std::size_t n = diag.size();
    rhs[0] *= inv[0];
    for (std::size_t i = 1; i < n; ++i) rhs[i] = (rhs[i] - lower[i] * rhs[i - 1]) * inv[i];
    for (std::size_t i = n - 1; i-- > 0;) rhs[i] -= cp[i] * rhs[i + 1];
  }
};

double lerp_grid(const std::vector<double>& row, double x, double L) {
  const std::size_t n = row.size();
  const double u = std::clamp(x / L, 0.0, 1.0) * static_cast<double>(n - 1);
  const std::size_t i = std::min(static_cast<std::size_t>(u), n - 2);
  const double w = u - static_cast<double>(i);
  return (1.0 - w) * row[i] + w * row[i + 1];
}

}  // namespace

double caputo_quadrature(const std::vector<double>& f, double dt, double alpha, double t,
                         std::optional<double> initial_slope) {
  require(alpha > 0.0 && alpha < 2.0, ErrorCode::InvalidArgument, "caputo_quadrature needs 0 < alpha < 2");
  require(dt > 0.0 && f.size() >= 3, ErrorCode::InvalidArgument, "need dt > 0 and at least three samples");
  const int n = grid_index(t, dt, f.size());
  if (n == 0) {
    require(f[1] == f[0], ErrorCode::SingularEndpoint, "Caputo derivative at t = 0 of a non-constant function");
    return 0.0;
  }
  if (alpha < 1.0) return l1_caputo(f, dt, alpha, n);
  if (alpha == 1.0) {
    if (n == 1) return (f[1] - f[0]) / dt;
    return (3.0 * f[n] - 4.0 * f[n - 1] + f[n - 2]) / (2.0 * dt);
  }
  // order 1 < a < 2: L1 of order a - 1 applied to g = f' on the nodes
  require(static_cast<std::size_t>(n) < f.size(), ErrorCode::InvalidArgument, "t outside samples");
  std::vector<double> g(static_cast<std::size_t>(n) + 1);
  g[0] = initial_slope ? *initial_slope : (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * dt);
  for (int j = 1; j < n; ++j) g[j] = (f[j + 1] - f[j - 1]) / (2.0 * dt);
  if (n >= 2) {
    g[n] = (3.0 * f[n] - 4.0 * f[n - 1] + f[n - 2]) / (2.0 * dt);
  } else {
    g[n] = (f[n] - f[n - 1]) / dt;
  }
  return l1_caputo(g, dt, alpha - 1.0, n);
}

double riemann_liouville_integral(const std::vector<double>& f, double dx, double beta, double x) {
  require(beta > 0.0, ErrorCode::InvalidArgument, "order must be positive");
  require(dx > 0.0 && f.size() >= 2, ErrorCode::InvalidArgument, "need dx > 0 and at least two samples");
  const int n = grid_index(x, dx, f.size());
  if (n == 0) return 0.0;
  // product trapezoid weights for the piecewise-linear interpolant
  const double b1 = beta + 1.0;
  double s = (std::pow(n - 1.0, b1) - (n - beta - 1.0) * std::pow(static_cast<double>(n), beta)) * f[0];
  for (int j = 1; j < n; ++j) {
    const double w = std::pow(n - j + 1.0, b1) - 2.0 * std::pow(static_cast<double>(n - j), b1) +
                     std::pow(n - j - 1.0, b1);
    s += w * f[j];
  }
  s += f[n];
  return s * std::pow(dx, beta) / std::tgamma(beta + 2.0);
}

namespace detail {

SolutionField fd_solve_impl(const DiffusionProblem& problem, double reaction, double source, const FDGrid& grid,
                            const std::vector<double>& times, const std::vector<double>& xs,
                            const std::vector<double>& initial) {
  validate(problem);
  require(reaction >= 0.0, ErrorCode::InvalidArgument, "reaction coefficient must be >= 0");
  require(grid.nt >= kMinTimeSteps && grid.nx >= kMinSpacePoints, ErrorCode::GridTooCoarse,
          "grid needs nt >= " + std::to_string(kMinTimeSteps) + " and nx >= " + std::to_string(kMinSpacePoints));
  require(grid.nx % 2 == 1, ErrorCode::InvalidArgument, "nx must be odd");
  require(grid.t_max > 0.0, ErrorCode::InvalidArgument, "t_max must be positive");
  for (double t : times) {
    require(t >= 0.0 && t <= grid.t_max * (1.0 + 1e-12), ErrorCode::InvalidArgument,
            "requested time " + std::to_string(t) + " outside [0, t_max]");
  }

  const int nt = grid.nt;
  const int nx = grid.nx;
  const double a = problem.alpha;
  const double dt = grid.dt();
  const double h = problem.L / (nx - 1);
  const double Dh = problem.D / (h * h);
  const bool dirichlet = problem.bc.kind == BoundaryKind::dirichlet;
  const double bval = problem.bc.value;

  // unknowns: interior nodes (Dirichlet) or all nodes (Neumann)
  const int first = dirichlet ? 1 : 0;
  const int last = dirichlet ? nx - 2 : nx - 1;
  const int nu = last - first + 1;

  const bool second_order = a > 1.0;
  const double ord = second_order ? a - 1.0 : a;
  const double mu = std::pow(dt, ord) * std::tgamma(2.0 - ord);
  const auto b = l1_weights(ord, nt + 1);
  // diagonal shift: b0 for T (a <= 1) or 2/dt for the trapezoid update (a > 1)
  const double lead = second_order ? 2.0 / dt : 1.0;

  auto system = [&](double m) {
    Tridiag A;
    A.lower.assign(nu, 0.0);
    A.diag.assign(nu, 0.0);
    A.upper.assign(nu, 0.0);
    for (int r = 0; r < nu; ++r) {
      const int i = first + r;
      A.diag[r] = lead + m * (2.0 * Dh + reaction);
      if (r > 0) A.lower[r] = -m * Dh;
      if (r + 1 < nu) A.upper[r] = -m * Dh;
      if (!dirichlet && i == 0) A.upper[r] = -2.0 * m * Dh;
      if (!dirichlet && i == nx - 1) A.lower[r] = -2.0 * m * Dh;
    }
    A.factor();
    return A;
  };
  const Tridiag A = system(mu);
  // a = 1: BDF2 after a backward Euler start
  const bool bdf2 = a == 1.0;
  const double mu2 = 2.0 * dt / 3.0;
  const Tridiag A2 = bdf2 ? system(mu2) : Tridiag{};

  std::vector<std::vector<double>> T(static_cast<std::size_t>(nt) + 1, std::vector<double>(nx));
  T[0] = initial;
  // velocity history for a > 1
  std::vector<std::vector<double>> V;
  if (second_order) {
    V.assign(static_cast<std::size_t>(nt) + 1, std::vector<double>(nx, 0.0));
    if (!problem.initial_velocity.empty()) {
      for (int i = 0; i < nx; ++i) V[0][i] = lerp_grid(problem.initial_velocity, problem.L * i / (nx - 1), problem.L);
    }
    if (dirichlet) V[0][0] = V[0][nx - 1] = 0.0;
  }

  std::vector<double> rhs(nu);
  std::vector<double> hist(nx);
  for (int n = 1; n <= nt; ++n) {
    if (bdf2 && n >= 2) {
      for (int r = 0; r < nu; ++r) {
        const int i = first + r;
        rhs[r] = (4.0 * T[n - 1][i] - T[n - 2][i]) / 3.0 + mu2 * source;
      }
      if (dirichlet) {
        rhs[0] += mu2 * Dh * bval;
        rhs[nu - 1] += mu2 * Dh * bval;
      }
      A2.solve(rhs);
      for (int r = 0; r < nu; ++r) T[n][first + r] = rhs[r];
      if (dirichlet) T[n][0] = T[n][nx - 1] = bval;
      continue;
    }
    // history sum_{k=1}^{n-1} b_k (w^{n-k} - w^{n-k-1}), w = T or v
    const auto& W = second_order ? V : T;
    std::fill(hist.begin(), hist.end(), 0.0);
    for (int k = 1; k <= n - 1; ++k) {
      const double bk = b[k];
      const auto& w1 = W[n - k];
      const auto& w0 = W[n - k - 1];
      for (int i = first; i <= last; ++i) hist[i] += bk * (w1[i] - w0[i]);
    }
    for (int r = 0; r < nu; ++r) {
      const int i = first + r;
      if (second_order) {
        rhs[r] = 2.0 / dt * T[n - 1][i] + 2.0 * V[n - 1][i] - hist[i] + mu * source;
      } else {
        rhs[r] = T[n - 1][i] - hist[i] + mu * source;
      }
    }
    if (dirichlet) {
      rhs[0] += mu * Dh * bval;
      rhs[nu - 1] += mu * Dh * bval;
    }
    A.solve(rhs);
    auto& Tn = T[n];
    for (int r = 0; r < nu; ++r) Tn[first + r] = rhs[r];
    if (dirichlet) Tn[0] = Tn[nx - 1] = bval;
    if (second_order) {
      for (int i = 0; i < nx; ++i) V[n][i] = 2.0 * (Tn[i] - T[n - 1][i]) / dt - V[n - 1][i];
      if (dirichlet) V[n][0] = V[n][nx - 1] = 0.0;
    }
  }

  SolutionField out;
  out.times = times;
  out.xs = xs;
  out.values.resize(times.size() * xs.size());
  out.truncation = nt;
  out.problem_hash = problem_hash(problem);
  for (std::size_t it = 0; it < times.size(); ++it) {
    const double u = std::min(times[it] / dt, static_cast<double>(nt));
    const int n0 = std::min(static_cast<int>(u), nt - 1);
    const double w = u - n0;
    for (std::size_t ix = 0; ix < xs.size(); ++ix) {
      const double v0 = lerp_grid(T[n0], xs[ix], problem.L);
      const double v1 = lerp_grid(T[n0 + 1], xs[ix], problem.L);
      // t = 0 reports the initial data, boundary nodes included
      out.at(it, ix) = times[it] == 0.0 ? lerp_grid(T[0], xs[ix], problem.L) : (1.0 - w) * v0 + w * v1;
    }
  }
  return out;
}

}  // namespace detail

SolutionField fd_solve(const DiffusionProblem& problem, double reaction, double source, const FDGrid& grid,
                       const std::vector<double>& times, const std::vector<double>& xs) {
  return fd_solve_with(problem, reaction, source, grid, times, xs,
                       [&](double x) { return initial_profile_value(problem, x); });
}

SolutionField classical_solutions(const DiffusionProblem& problem, const std::vector<double>& times,
                                  const std::vector<double>& xs, int M) {
  return classical_solutions(problem, fourier_coeffs(problem, M), times, xs);
}

SolutionField classical_solutions(const DiffusionProblem& problem, const ModeSpectrum& spectrum,
                                  const std::vector<double>& times, const std::vector<double>& xs) {
  require(problem.alpha == 1.0 || problem.alpha == 2.0, ErrorCode::UnsupportedOrder,
          "classical solutions exist for alpha = 1 or 2 only");
  const bool wave = problem.alpha == 2.0;
  SolutionField out;
  out.times = times;
  out.xs = xs;
  out.values.assign(times.size() * xs.size(), spectrum.offset);
  out.truncation = static_cast<int>(spectrum.modes.size());
  out.problem_hash = problem_hash(problem);
  for (std::size_t it = 0; it < times.size(); ++it) {
    const double t = times[it];
    for (const Mode& md : spectrum.modes) {
      double amp;
      if (wave) {
        const double w = std::sqrt(md.rate);
        amp = md.f * std::cos(w * t) + (md.fprime != 0.0 ? md.fprime * (w > 0.0 ? std::sin(w * t) / w : t) : 0.0);
      } else {
        amp = md.f * std::exp(-md.rate * t);
      }
      for (std::size_t ix = 0; ix < xs.size(); ++ix) {
        const double arg = md.k * xs[ix] + md.phase;
        out.at(it, ix) += amp * (md.trig == Trig::sin ? std::sin(arg) : std::cos(arg));
      }
    }
  }
  return out;
}

double relative_l2(const SolutionField& a, const SolutionField& b) {
  require(a.values.size() == b.values.size(), ErrorCode::InvalidArgument, "fields differ in shape");
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    const double d = a.values[i] - b.values[i];
    num += d * d;
    den += b.values[i] * b.values[i];
  }
  return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

}  // namespace fracheat
