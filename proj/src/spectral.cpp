#include "fracheat/spectral.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <cstring>
#include <limits>
#include <numbers>

#include "fracheat/error.hpp"
#include "fracheat/mittag_leffler.hpp"

namespace fracheat {

namespace {

constexpr double kPi = std::numbers::pi;

void check_alpha(double alpha) {
  require(alpha > 0.0 && alpha <= 2.0, ErrorCode::ValidationError,
          "alpha must lie in (0, 2], got " + std::to_string(alpha));
}

// Composite Simpson on a uniform grid, extrapolated against the grid with
// twice the spacing. Needs (n-1) divisible by 4.
double simpson_richardson(const std::vector<double>& y, double h) {
  const std::size_t n = y.size();
  auto simpson = [&](std::size_t stride) {
    double s = y[0] + y[n - 1];
    const std::size_t intervals = (n - 1) / stride;
    for (std::size_t i = 1; i < intervals; ++i) s += y[i * stride] * ((i % 2 == 1) ? 4.0 : 2.0);
    return s * h * stride / 3.0;
  };
  const double fine = simpson(1);
  const double coarse = simpson(2);
  return fine + (fine - coarse) / 15.0;
}

void check_samples(const std::vector<double>& s, const char* what) {
  require(s.size() >= 65 && (s.size() - 1) % 4 == 0, ErrorCode::UnsupportedProfile,
          std::string(what) + " needs at least 65 uniform samples with (n-1) divisible by 4, got " +
              std::to_string(s.size()));
}

// (2/L) int_0^L g(x) trig(m pi x / L) dx from uniform samples of g.
double project_samples(const std::vector<double>& g, double L, int m, Trig trig) {
  const std::size_t n = g.size();
  const double h = L / static_cast<double>(n - 1);
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double arg = m * kPi * static_cast<double>(i) / static_cast<double>(n - 1);
    y[i] = g[i] * (trig == Trig::sin ? std::sin(arg) : std::cos(arg));
  }
  return 2.0 / L * simpson_richardson(y, h);
}

double interpolate_samples(const std::vector<double>& s, double L, double x) {
  const double u = std::clamp(x / L, 0.0, 1.0) * static_cast<double>(s.size() - 1);
  const std::size_t i = std::min(static_cast<std::size_t>(u), s.size() - 2);
  const double w = u - static_cast<double>(i);
  return (1.0 - w) * s[i] + w * s[i + 1];
}

// sum_{n>=1} (-1)^n cos(n th) / n^2 and / n^4 for th in [-pi, pi]
double alt_cos_sum2(double th) { return th * th / 4.0 - kPi * kPi / 12.0; }
double alt_cos_sum4(double th) {
  const double t2 = th * th;
  return -7.0 * std::pow(kPi, 4) / 720.0 + kPi * kPi * t2 / 24.0 - t2 * t2 / 48.0;
}

}  // namespace

void validate(const DiffusionProblem& p) {
  require(p.D > 0.0 && std::isfinite(p.D), ErrorCode::ValidationError, "D must be positive");
  require(p.L > 0.0 && std::isfinite(p.L), ErrorCode::ValidationError, "L must be positive");
  check_alpha(p.alpha);
  if (!p.initial_velocity.empty()) check_samples(p.initial_velocity, "initial velocity");
}

BoundaryCondition natural_bc(ProfileKind kind) {
  BoundaryCondition bc;
  if (kind == ProfileKind::quadratic || kind == ProfileKind::quartic) bc.kind = BoundaryKind::neumann;
  return bc;
}

ModeSpectrum fourier_coeffs(const DiffusionProblem& problem, int M) {
  validate(problem);
  require(M >= 1, ErrorCode::InvalidArgument, "need at least one mode");
  const double L = problem.L;
  const double D = problem.D;
  ModeSpectrum s;
  auto add = [&](int m, double f, Trig trig) {
    Mode md;
    md.m = m;
    md.k = m * kPi / L;
    md.f = f;
    md.trig = trig;
    md.rate = D * md.k * md.k;
    s.modes.push_back(md);
  };
  switch (problem.profile.kind) {
    case ProfileKind::linear_100: {
      const double A = problem.profile.amplitude;
      for (int m = 1; m <= M; ++m) add(m, 2.0 * A / (m * kPi) * ((m % 2 == 1) ? 1.0 : -1.0), Trig::sin);
      break;
    }
    case ProfileKind::quadratic: {
      s.offset = L * L / 3.0;
      for (int n = 2; n <= M; ++n) {
        const double sgn = (n % 2 == 0) ? 1.0 : -1.0;
        add(n, 4.0 * L * L / std::pow(n * kPi, 2) * sgn, Trig::cos);
      }
      break;
    }
    case ProfileKind::quartic: {
      s.offset = std::pow(L, 4) / 5.0;
      for (int n = 2; n <= M; ++n) {
        const double sgn = (n % 2 == 0) ? 1.0 : -1.0;
        const double nk = n * kPi;
        add(n, sgn * (4.0 * L * L / (nk * nk) - 48.0 * std::pow(L, 4) / std::pow(nk, 4)), Trig::cos);
      }
      break;
    }
    case ProfileKind::sine_pi:
      add(1, 1.0, Trig::sin);
      break;
    case ProfileKind::custom: {
      const auto& g = problem.profile.samples;
      check_samples(g, "custom profile");
      const int usable = std::min(M, static_cast<int>((g.size() - 1) / 4));
      for (int m = 1; m <= usable; ++m) add(m, project_samples(g, L, m, Trig::sin), Trig::sin);
      break;
    }
  }

  if (!problem.initial_velocity.empty() && problem.alpha > 1.0) {
    const auto& v = problem.initial_velocity;
    for (auto& md : s.modes) {
      require(md.trig == Trig::sin, ErrorCode::UnsupportedProfile,
              "initial velocity is only supported with the Dirichlet sin basis");
      md.fprime = project_samples(v, L, md.m, Trig::sin);
    }
  }
  return s;
}

double initial_profile_value(const DiffusionProblem& problem, double x) {
  const double L = problem.L;
  const double th = kPi * x / L;
  switch (problem.profile.kind) {
    case ProfileKind::linear_100:
      return problem.profile.amplitude * x / L;
    case ProfileKind::quadratic:
      return x * x + 4.0 * L * L / (kPi * kPi) * std::cos(th);
    case ProfileKind::quartic:
      return std::pow(L, 4) / 5.0 + 4.0 * L * L / (kPi * kPi) * (alt_cos_sum2(th) + std::cos(th)) -
             48.0 * std::pow(L, 4) / std::pow(kPi, 4) * (alt_cos_sum4(th) + std::cos(th));
    case ProfileKind::sine_pi:
      return std::sin(th);
    case ProfileKind::custom:
      return interpolate_samples(problem.profile.samples, L, x);
  }
  return 0.0;
}

SolutionField evaluate(const DiffusionProblem& problem, const ModeSpectrum& spectrum,
                       const std::vector<double>& times, const std::vector<double>& xs,
                       Summation summation, int order) {
  check_alpha(problem.alpha);
  const int nmodes = static_cast<int>(spectrum.modes.size());
  require(order <= nmodes, ErrorCode::InvalidArgument,
          "order " + std::to_string(order) + " exceeds the " + std::to_string(nmodes) + " available modes");
  const int n = order <= 0 ? nmodes : order;
  for (double t : times) require(t >= 0.0 && std::isfinite(t), ErrorCode::InvalidArgument, "times must be >= 0");

  SolutionField out;
  out.times = times;
  out.xs = xs;
  out.values.assign(times.size() * xs.size(), spectrum.offset);
  out.truncation = n;
  out.summation = summation;
  out.fejer_order = summation == Summation::fejer ? n : 0;
  out.problem_hash = problem_hash(problem);

  std::vector<double> weight(n, 1.0);
  if (summation == Summation::fejer) {
    for (int j = 0; j < n; ++j) weight[j] = 1.0 - static_cast<double>(j + 1) / (n + 1.0);
  }
  // trig table, mode-major
  std::vector<double> basis(static_cast<std::size_t>(n) * xs.size());
  for (int j = 0; j < n; ++j) {
    const Mode& md = spectrum.modes[j];
    for (std::size_t ix = 0; ix < xs.size(); ++ix) {
      const double arg = md.k * xs[ix] + md.phase;
      basis[j * xs.size() + ix] = md.trig == Trig::sin ? std::sin(arg) : std::cos(arg);
    }
  }

  const double a = problem.alpha;
  std::vector<double> amp(n);
  for (std::size_t it = 0; it < times.size(); ++it) {
    const double t = times[it];
    const double ta = t == 0.0 ? 0.0 : std::pow(t, a);
    for (int j = 0; j < n; ++j) {
      const Mode& md = spectrum.modes[j];
      double v = 0.0;
      if (md.f != 0.0) {
        const MLEvalResult r = ml_eval({a, 1.0}, -md.rate * ta);
        v += md.f * r.value;
        out.max_ml_error = std::max(out.max_ml_error, std::fabs(md.f) * r.est_abs_error);
      }
      if (md.fprime != 0.0 && t > 0.0) {
        const MLEvalResult r = ml_eval({a, 2.0}, -md.rate * ta);
        v += md.fprime * t * r.value;
        out.max_ml_error = std::max(out.max_ml_error, std::fabs(md.fprime) * t * r.est_abs_error);
      }
      amp[j] = weight[j] * v;
    }
    double* row = &out.values[it * xs.size()];
    for (int j = 0; j < n; ++j) {
      if (amp[j] == 0.0) continue;
      const double* b = &basis[j * xs.size()];
      for (std::size_t ix = 0; ix < xs.size(); ++ix) row[ix] += amp[j] * b[ix];
    }
    for (std::size_t ix = 0; ix < xs.size(); ++ix) {
      require(std::isfinite(row[ix]), ErrorCode::NonFiniteValue,
              "non-finite value at t = " + std::to_string(t) + ", x = " + std::to_string(xs[ix]));
    }
  }
  return out;
}

ModeSpectrum nonstationary_spectrum(double L, int M, double D) {
  require(L > 0.0, ErrorCode::ValidationError, "L must be positive");
  require(M >= 2, ErrorCode::InvalidArgument, "need at least two modes");
  // one Gauss-Legendre panel per wavelength of the mode
  auto project = [L](int m, auto&& f) {
    double sum = 0.0;
    const int panels = m / 2 + 1;
    const double h = L / panels;
    for (int j = 0; j < panels; ++j) sum += boost::math::quadrature::gauss<double, 30>::integrate(f, j * h, (j + 1) * h);
    return 2.0 / L * sum;
  };
  ModeSpectrum s;
  for (int m = 1; m <= M; ++m) {
    const double k = m * kPi / L;
    auto fu = [&](double x) { return std::sin(kPi * x / L) * std::sin(k * x); };
    auto fv = [&](double x) { return kPi / L * std::cos(kPi * x / L) * std::sin(k * x); };
    Mode md;
    md.m = m;
    md.k = k;
    md.trig = Trig::sin;
    md.rate = D * k * k;
    md.f = project(m, fu);
    md.fprime = project(m, fv);
    s.modes.push_back(md);
  }
  return s;
}

DiffusionProblem nonstationary_problem(double L, double D, double alpha, int samples) {
  DiffusionProblem p;
  p.L = L;
  p.D = D;
  p.alpha = alpha;
  p.profile.kind = ProfileKind::custom;
  const auto xs = linspace(0.0, L, samples);
  for (double x : xs) {
    p.profile.samples.push_back(std::sin(kPi * x / L));
    p.initial_velocity.push_back(kPi / L * std::cos(kPi * x / L));
  }
  return p;
}

namespace {

double mode_scale(double alpha, double D, double L, int n) {
  require(alpha > 1.0 && alpha <= 2.0, ErrorCode::OutOfRange,
          "timescales are defined for 1 < alpha <= 2, got " + std::to_string(alpha));
  require(D > 0.0 && L > 0.0 && n >= 1, ErrorCode::InvalidArgument, "need D > 0, L > 0, n >= 1");
  return std::pow(D * n * n * kPi * kPi / (L * L), -1.0 / alpha);
}

}  // namespace

double transient_period(double alpha, double D, double L, int n) {
  const double s = mode_scale(alpha, D, L, n);
  return 2.0 * kPi / std::sin(kPi / alpha) * s;
}

double damping_time(double alpha, double D, double L, int n) {
  const double s = mode_scale(alpha, D, L, n);
  if (alpha == 2.0) return std::numeric_limits<double>::infinity();
  return -s / std::cos(kPi / alpha);
}

std::vector<TimescaleEntry> timescales(double alpha, double D, double L, int n_max) {
  require(n_max >= 1, ErrorCode::InvalidArgument, "n_max must be >= 1");
  std::vector<TimescaleEntry> out;
  for (int n = 1; n <= n_max; ++n) {
    out.push_back({n, transient_period(alpha, D, L, n), damping_time(alpha, D, L, n)});
  }
  return out;
}

double gibbs_overshoot(const ModeSpectrum& spectrum, double L, int truncation, Summation summation) {
  const auto& modes = spectrum.modes;
  const bool all_sin = !modes.empty() && std::all_of(modes.begin(), modes.end(),
                                                     [](const Mode& m) { return m.trig == Trig::sin; });
  require(all_sin, ErrorCode::NoJump, "cos series of a continuous profile has no jump");
  require(truncation >= 32, ErrorCode::InvalidArgument, "truncation must be at least 32");
  require(truncation <= static_cast<int>(modes.size()), ErrorCode::InvalidArgument,
          "truncation exceeds the available modes");

  // b_m ~ 2/(m pi) (T(0+) - (-1)^m T(L-)); two consecutive modes give both limits.
  const Mode& ma = modes[truncation - 2];
  const Mode& mb = modes[truncation - 1];
  require(mb.m == ma.m + 1, ErrorCode::NoJump, "need consecutive modes to locate the jump");
  const double ga = ma.m * kPi * ma.f / 2.0;
  const double gb = mb.m * kPi * mb.f / 2.0;
  const double g_even = (ma.m % 2 == 0) ? ga : gb;
  const double g_odd = (ma.m % 2 == 0) ? gb : ga;
  const double left = 0.5 * (g_even + g_odd);
  const double right = 0.5 * (g_odd - g_even);
  double fmax = 0.0;
  for (int j = 0; j < truncation; ++j) fmax = std::max(fmax, std::fabs(modes[j].f));
  require(std::max(std::fabs(left), std::fabs(right)) > 1e-9 * fmax, ErrorCode::NoJump,
          "coefficients decay faster than 1/m: continuous profile");

  const bool at_right = std::fabs(right) >= std::fabs(left);
  const double top = at_right ? right : left;
  const double sgn = top > 0.0 ? 1.0 : -1.0;
  const int n = truncation;
  auto series = [&](double x) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) {
      const double w = summation == Summation::fejer ? 1.0 - (j + 1.0) / (n + 1.0) : 1.0;
      s += w * modes[j].f * std::sin(modes[j].k * x + modes[j].phase);
    }
    return sgn * s;
  };
  const double width = 8.0 * L / n;
  const double a = at_right ? L - width : 0.0;
  const double b = at_right ? L : width;
  constexpr int kSamples = 800;
  double best_x = a;
  double best = -std::numeric_limits<double>::infinity();
  for (int i = 0; i <= kSamples; ++i) {
    const double x = a + (b - a) * i / kSamples;
    const double v = series(x);
    if (v > best) {
      best = v;
      best_x = x;
    }
  }
  const double h = (b - a) / kSamples;
  const auto r = boost::math::tools::brent_find_minima([&](double x) { return -series(x); },
                                                       std::max(a, best_x - h), std::min(b, best_x + h), 50);
  best = std::max(best, -r.second);
  return (best - std::fabs(top)) / (2.0 * std::fabs(top));
}

std::vector<double> profile_spread(const DiffusionProblem& problem, const std::vector<double>& alphas,
                                   const std::vector<double>& times, const CrossoverOptions& opt) {
  require(alphas.size() >= 3, ErrorCode::InvalidArgument, "need at least three alphas");
  for (double a : alphas) {
    require(a > 0.0 && a <= 1.0, ErrorCode::InvalidArgument, "crossover alphas must lie in (0, 1]");
  }
  const auto xs = linspace(0.0, problem.L, opt.n_xs);
  const double dx = xs[1] - xs[0];
  std::vector<SolutionField> fields;
  for (double a : alphas) {
    DiffusionProblem p = problem;
    p.alpha = a;
    fields.push_back(evaluate(p, fourier_coeffs(p, opt.modes), times, xs));
  }
  std::vector<double> spread(times.size(), 0.0);
  std::vector<double> diff(xs.size());
  for (std::size_t it = 0; it < times.size(); ++it) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      for (std::size_t j = i + 1; j < fields.size(); ++j) {
        for (std::size_t ix = 0; ix < xs.size(); ++ix) diff[ix] = fields[i].at(it, ix) - fields[j].at(it, ix);
        spread[it] = std::max(spread[it], l2_norm(diff, dx));
      }
    }
  }
  return spread;
}

CrossoverResult crossover_time(const DiffusionProblem& problem, const std::vector<double>& alphas,
                               const CrossoverOptions& opt) {
  require(alphas.size() >= 3, ErrorCode::InvalidArgument, "need at least three alphas");
  double abar = 0.0;
  for (double a : alphas) abar += a;
  abar /= static_cast<double>(alphas.size());
  const double scale = std::pow(problem.L * problem.L / problem.D, 1.0 / abar);
  CrossoverResult r;
  const double lo = std::log(1e-3 * scale);
  const double hi = std::log(10.0 * scale);
  for (int i = 0; i < opt.n_times; ++i) r.times.push_back(std::exp(lo + (hi - lo) * i / (opt.n_times - 1)));
  r.spreads = profile_spread(problem, alphas, r.times, opt);
  const auto it = std::min_element(r.spreads.begin(), r.spreads.end());
  r.t_cross = r.times[static_cast<std::size_t>(it - r.spreads.begin())];
  r.spread = *it;
  return r;
}

std::uint64_t problem_hash(const DiffusionProblem& p) {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](const void* data, std::size_t n) {
    const auto* b = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
      h ^= b[i];
      h *= 1099511628211ULL;
    }
  };
  auto mix_d = [&](double v) { mix(&v, sizeof v); };
  mix_d(p.D);
  mix_d(p.L);
  mix_d(p.alpha);
  const int kind = static_cast<int>(p.profile.kind);
  mix(&kind, sizeof kind);
  mix_d(p.profile.amplitude);
  for (double v : p.profile.samples) mix_d(v);
  for (double v : p.initial_velocity) mix_d(v);
  const int bc = static_cast<int>(p.bc.kind);
  mix(&bc, sizeof bc);
  mix_d(p.bc.value);
  return h;
}

std::string to_string(ProfileKind k) {
  switch (k) {
    case ProfileKind::linear_100: return "linear_100";
    case ProfileKind::quadratic: return "quadratic";
    case ProfileKind::quartic: return "quartic";
    case ProfileKind::sine_pi: return "sine_pi";
    case ProfileKind::custom: return "custom";
  }
  return "unknown";
}

ProfileKind profile_from_string(const std::string& s) {
  if (s == "linear_100" || s == "linear") return ProfileKind::linear_100;
  if (s == "quadratic") return ProfileKind::quadratic;
  if (s == "quartic") return ProfileKind::quartic;
  if (s == "sine_pi") return ProfileKind::sine_pi;
  if (s == "custom") return ProfileKind::custom;
  throw Error(ErrorCode::ValidationError, "unknown profile '" + s + "'");
}

std::vector<double> linspace(double a, double b, int n) {
  require(n >= 2, ErrorCode::InvalidArgument, "linspace needs at least two points");
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[i] = a + (b - a) * i / (n - 1);
  v.back() = b;
  return v;
}

double l2_norm(const std::vector<double>& v, double dx) {
  if (v.empty()) return 0.0;
  double s = 0.0;
  for (double x : v) s += x * x;
  s -= 0.5 * (v.front() * v.front() + v.back() * v.back());
  return std::sqrt(std::max(0.0, s) * dx);
}

}  // namespace fracheat
