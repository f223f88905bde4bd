#include "fracheat/pennes.hpp"

#include <cmath>
#include <numbers>

#include "fracheat/error.hpp"

namespace fracheat {

namespace {

constexpr double kPi = std::numbers::pi;

double perfusion(const PennesParams& p) { return p.rho_b * p.c_b * p.omega_b; }

}  // namespace

void validate(const PennesParams& p) {
  auto positive = [](double v, const char* name) {
    require(v > 0.0 && std::isfinite(v), ErrorCode::ValidationError, std::string(name) + " must be positive");
  };
  positive(p.rho_t, "rho_t");
  positive(p.c_t, "c_t");
  positive(p.k_cond, "k_cond");
  positive(p.rho_b, "rho_b");
  positive(p.c_b, "c_b");
  positive(p.omega_b, "omega_b");
  positive(p.tau_dim, "tau_dim");
  positive(p.L, "L");
  positive(p.T_h, "T_h");
  require(p.Q_meta >= 0.0, ErrorCode::ValidationError, "Q_meta must be >= 0");
  require(std::isfinite(p.T_b), ErrorCode::ValidationError, "T_b must be finite");
  require(p.alpha > 0.0 && p.alpha <= 2.0, ErrorCode::ValidationError,
          "alpha must lie in (0, 2], got " + std::to_string(p.alpha));
}

ReducedParams reduce_params(const PennesParams& p) {
  validate(p);
  const double cap = p.rho_t * p.c_t * std::pow(p.tau_dim, p.alpha - 1.0);
  ReducedParams r;
  r.D = p.k_cond / cap;
  r.gamma = perfusion(p) / p.k_cond;
  r.delta = (p.Q_meta + perfusion(p) * p.T_b) / cap;
  return r;
}

std::string to_string(PennesProfile p) { return p == PennesProfile::quadratic ? "quadratic" : "linear"; }

PennesProfile pennes_profile_from_string(const std::string& s) {
  if (s == "quadratic") return PennesProfile::quadratic;
  if (s == "linear" || s == "linear_100") return PennesProfile::linear;
  throw Error(ErrorCode::ValidationError, "unknown pennes profile '" + s + "'");
}

double pennes_equilibrium(const PennesParams& p) { return p.T_b + p.Q_meta / perfusion(p); }

double pennes_offset(const PennesParams& p, PennesProfile profile) {
  const double base = pennes_equilibrium(p);
  return profile == PennesProfile::quadratic ? base + 2.0 * p.T_h / 3.0 : base;
}

ModeSpectrum pennes_spectrum(const PennesParams& p, int M, PennesProfile profile) {
  require(M >= 1, ErrorCode::InvalidArgument, "need at least one mode");
  const ReducedParams r = reduce_params(p);
  ModeSpectrum s;
  s.offset = pennes_offset(p, profile);
  for (int m = 1; m <= M; ++m) {
    const double km = m * kPi / p.L;
    const double sgn = (m % 2 == 1) ? 1.0 : -1.0;
    Mode md;
    md.m = m;
    md.rate = r.D * (km * km + r.gamma);
    if (profile == PennesProfile::quadratic) {
      // cos((m pi/L)(2x + L))
      md.f = 4.0 * p.T_h / std::pow(m * kPi, 2) * sgn;
      md.trig = Trig::cos;
      md.k = 2.0 * km;
      md.phase = m * kPi;
    } else {
      md.f = 2.0 * p.T_h / (m * kPi) * sgn;
      md.trig = Trig::sin;
      md.k = km;
    }
    s.modes.push_back(md);
  }
  return s;
}

DiffusionProblem pennes_problem(const PennesParams& p, PennesProfile profile) {
  const ReducedParams r = reduce_params(p);
  DiffusionProblem d;
  d.D = r.D;
  d.L = p.L;
  d.alpha = p.alpha;
  d.profile.kind = profile == PennesProfile::quadratic ? ProfileKind::quadratic : ProfileKind::linear_100;
  d.profile.amplitude = p.T_h;
  d.bc.kind = BoundaryKind::dirichlet;
  d.bc.value = pennes_equilibrium(p);
  return d;
}

SolutionField pennes_eval(const PennesParams& p, const std::vector<double>& times, const std::vector<double>& xs,
                          int M, PennesProfile profile, Summation summation, int order) {
  return evaluate(pennes_problem(p, profile), pennes_spectrum(p, M, profile), times, xs, summation, order);
}

SolutionField pennes_alpha2_eval(const PennesParams& p, const std::vector<double>& times,
                                 const std::vector<double>& xs, int M, PennesProfile profile) {
  require(p.alpha == 2.0, ErrorCode::ValidationError, "closed cosine form needs alpha = 2");
  const ModeSpectrum s = pennes_spectrum(p, M, profile);
  SolutionField out;
  out.times = times;
  out.xs = xs;
  out.values.assign(times.size() * xs.size(), s.offset);
  out.truncation = M;
  out.problem_hash = problem_hash(pennes_problem(p, profile));
  std::vector<double> basis(s.modes.size() * xs.size());
  for (std::size_t j = 0; j < s.modes.size(); ++j) {
    const Mode& md = s.modes[j];
    for (std::size_t ix = 0; ix < xs.size(); ++ix) {
      const double arg = md.k * xs[ix] + md.phase;
      basis[j * xs.size() + ix] = md.trig == Trig::sin ? std::sin(arg) : std::cos(arg);
    }
  }
  for (std::size_t it = 0; it < times.size(); ++it) {
    for (std::size_t j = 0; j < s.modes.size(); ++j) {
      const double amp = s.modes[j].f * std::cos(std::sqrt(s.modes[j].rate) * times[it]);
      for (std::size_t ix = 0; ix < xs.size(); ++ix) out.at(it, ix) += amp * basis[j * xs.size() + ix];
    }
  }
  return out;
}

PennesPeriods pennes_periods(const PennesParams& p, int m_max) {
  require(m_max >= 1, ErrorCode::InvalidArgument, "m_max must be >= 1");
  const ReducedParams r = reduce_params(p);
  PennesPeriods out;
  out.p0 = 2.0 * kPi * p.rho_t * p.c_t * p.tau_dim / perfusion(p);
  for (int m = 1; m <= m_max; ++m) {
    out.pm.push_back(4.0 * p.L * p.L * std::sqrt(r.gamma) / (static_cast<double>(m) * m * kPi));
  }
  return out;
}

ModeSpectrum pennes_sine_spectrum(const PennesParams& p, int M, PennesProfile profile) {
  if (profile == PennesProfile::linear) return pennes_spectrum(p, M, profile);
  require(M >= 1, ErrorCode::InvalidArgument, "need at least one mode");
  const ReducedParams r = reduce_params(p);
  ModeSpectrum s;
  s.offset = pennes_equilibrium(p);
  // sin coefficients of 4 T_h x (L - x) / L^2
  for (int m = 1; m <= M; ++m) {
    const double km = m * kPi / p.L;
    Mode md;
    md.m = m;
    md.k = km;
    md.trig = Trig::sin;
    md.rate = r.D * (km * km + r.gamma);
    md.f = (m % 2 == 1) ? 32.0 * p.T_h / std::pow(m * kPi, 3) : 0.0;
    s.modes.push_back(md);
  }
  return s;
}

double pennes_initial_value(const PennesParams& p, double x, PennesProfile profile) {
  const double c = pennes_equilibrium(p);
  const double u = x / p.L;
  if (profile == PennesProfile::linear) return c + p.T_h * u;
  return c + 4.0 * p.T_h * u * (1.0 - u);
}

double pennes_stated_initial(const PennesParams& p, double x) {
  const double d = x - p.L / 2.0;
  return p.T_h * d * d / (p.L * p.L) + p.T_h;
}

double profile_distance(const std::vector<double>& a, const std::vector<double>& b, double dx) {
  require(a.size() == b.size() && a.size() >= 2, ErrorCode::InvalidArgument, "profiles must share a grid");
  std::vector<double> d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  return l2_norm(d, dx) / l2_norm(b, dx);
}

}  // namespace fracheat
