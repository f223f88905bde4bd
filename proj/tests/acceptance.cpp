// Acceptance run: one PASS/FAIL line per criterion with the measured values.
// Exit status is nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>

#include "fracheat/config.hpp"
#include "fracheat/error.hpp"
#include "fracheat/mittag_leffler.hpp"
#include "fracheat/oracles.hpp"
#include "fracheat/pennes.hpp"
#include "fracheat/runner.hpp"
#include "fracheat/semi_infinite.hpp"
#include "fracheat/spectral.hpp"

using namespace fracheat;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;
const fs::path kRoot = FRACHEAT_SOURCE_DIR;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

DiffusionProblem problem(ProfileKind kind, double alpha, double D = 1.0, double L = 1.0) {
  DiffusionProblem p;
  p.D = D;
  p.L = L;
  p.alpha = alpha;
  p.profile.kind = kind;
  p.bc = natural_bc(kind);
  return p;
}

double max_abs_diff(const SolutionField& a, const SolutionField& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) m = std::max(m, std::fabs(a.values[i] - b.values[i]));
  return m;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// zeros of t -> E_{a,1}(-r t^a) on (t0, t1)
std::vector<double> mode_zeros(double alpha, double rate, double t0, double t1, int n = 4000) {
  auto g = [&](double t) { return mittag_leffler(alpha, 1.0, -rate * std::pow(t, alpha)); };
  std::vector<double> zs;
  double a = t0, ga = g(a);
  for (int i = 1; i <= n; ++i) {
    const double b = t0 + (t1 - t0) * i / n;
    const double gb = g(b);
    if (ga * gb < 0.0) {
      double lo = a, hi = b, glo = ga;
      for (int k = 0; k < 60; ++k) {
        const double mid = 0.5 * (lo + hi);
        const double gm = g(mid);
        if (gm * glo > 0.0) {
          lo = mid;
          glo = gm;
        } else {
          hi = mid;
        }
      }
      zs.push_back(0.5 * (lo + hi));
    }
    a = b;
    ga = gb;
  }
  return zs;
}

// slope of log|E| through its local maxima on [t0, t1], as a decay time
double envelope_time(double alpha, double rate, double t0, double t1) {
  auto g = [&](double t) { return std::fabs(mittag_leffler(alpha, 1.0, -rate * std::pow(t, alpha))); };
  const int n = 4000;
  const double h = (t1 - t0) / n;
  std::vector<double> ts, ls;
  double prev = g(t0), cur = g(t0 + h);
  for (int i = 2; i <= n; ++i) {
    const double next = g(t0 + i * h);
    if (cur > prev && cur > next) {
      ts.push_back(t0 + (i - 1) * h);
      ls.push_back(std::log(cur));
    }
    prev = cur;
    cur = next;
  }
  if (ts.size() < 3) return std::nan("");
  double mt = 0, ml = 0;
  for (std::size_t i = 0; i < ts.size(); ++i) mt += ts[i], ml += ls[i];
  mt /= ts.size();
  ml /= ts.size();
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    sxy += (ts[i] - mt) * (ls[i] - ml);
    sxx += (ts[i] - mt) * (ts[i] - mt);
  }
  return -sxx / sxy;
}

Outcome integer_reductions() {
  const std::vector<double> times{0.01, 0.05, 0.2, 0.5, 1.0};
  const std::vector<double> xs = linspace(0.0, 1.0, 51);
  double worst = 0.0;
  for (double a : {1.0, 2.0}) {
    const DiffusionProblem p = problem(ProfileKind::linear_100, a);
    const ModeSpectrum s = fourier_coeffs(p, 200);
    worst = std::max(worst, max_abs_diff(evaluate(p, s, times, xs), classical_solutions(p, s, times, xs)));
  }
  return {worst <= 1e-8, fmt("max abs error %.3e (limit 1e-8)", worst)};
}

Outcome ml_identities() {
  double ident = 0.0;
  for (double x = 0.0; x <= 20.0; x += 0.05) {
    ident = std::max(ident, std::fabs(mittag_leffler(1.0, 1.0, -x) - std::exp(-x)));
    ident = std::max(ident, std::fabs(mittag_leffler(1.0, 1.0, x / 4) - std::exp(x / 4)) / std::exp(x / 4));
    ident = std::max(ident, std::fabs(mittag_leffler(2.0, 1.0, -x * x) - std::cos(x)));
  }
  for (double a : {0.1, 0.5, 1.0, 1.5, 2.0})
    for (double b : {0.5, 1.0, 2.0, 3.5}) ident = std::max(ident, std::fabs(mittag_leffler(a, b, 0.0) - 1.0 / std::tgamma(b)));

  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> ua(0.1, 2.0), ub(0.2, 3.0), u01(0.0, 1.0);
  double recur = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double a = ua(rng), b = ub(rng);
    const double z = -u01(rng) * ml::switch_radius(a);
    recur = std::max(recur, std::fabs(mittag_leffler(a, b, z) - b * mittag_leffler(a, b + 1.0, z) -
                                      a * z * ml_derivative({a, b + 1.0}, z)));
  }

  boost::math::quadrature::exp_sinh<double> q;
  double lap = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double a = 0.3 + 1.6 * u01(rng), b = 0.5 + 2.0 * u01(rng), s = 1.5 + 3.0 * u01(rng);
    const int n = i % 2;
    const MLParams p{a, b};
    auto f = [&](double t) {
      const double w = std::exp(-s * t);
      if (t == 0.0 || w == 0.0) return 0.0;
      const double z = -std::pow(t, a);
      const double e = n == 0 ? ml_eval(p, z).value : ml_derivative(p, z);
      return w * std::pow(t, a * n + b - 1.0) * e;
    };
    const double lhs = q.integrate(f, 1e-12);
    const double rhs = ml_laplace_pair(p, n, 1.0, -1, s);
    lap = std::max(lap, std::fabs(lhs - rhs) / std::fabs(rhs));
  }
  return {ident <= 1e-10 && recur <= 1e-8 && lap <= 1e-6,
          fmt("identities %.2e (1e-10), recurrence %.2e (1e-8), Laplace rel %.2e (1e-6)", ident, recur, lap)};
}

Outcome monotonicity() {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ua(1e-3, 1.0), ux(0.0, 50.0);
  int bad = 0;
  for (int i = 0; i < 200; ++i) {
    const double a = ua(rng);
    double x1 = ux(rng), x2 = ux(rng);
    if (x1 > x2) std::swap(x1, x2);
    if (x2 - x1 < 1e-6) x2 = x1 + 1e-3;
    const double e1 = mittag_leffler(a, 1.0, -x1), e2 = mittag_leffler(a, 1.0, -x2);
    if (!(e2 > 0.0 && e1 > e2)) ++bad;
  }
  return {bad == 0, fmt("%d violations in 200 samples", bad)};
}

Outcome oscillation() {
  bool ok = true;
  std::string d;
  for (double a : {1.5, 1.9}) {
    int changes = 0;
    double prev = 1.0;
    for (int i = 1; i <= 3000; ++i) {
      const double x = 0.01 * i;
      const double v = mittag_leffler(a, 1.0, -std::pow(x, a));
      if (v * prev < 0.0) ++changes;
      prev = v;
    }
    ok = ok && changes >= 1;
    d += fmt("sign changes a=%.1f: %d; ", a, changes);
  }
  const double z2 = ml_zero_smallest(2.0);
  ok = ok && std::fabs(z2 - kPi / 2) <= 1e-8;
  d += fmt("zero a=2 off by %.1e; ", std::fabs(z2 - kPi / 2));
  for (double a : {1.5, 1.9}) {
    const double period = transient_period(a, 1.0, 1.0, 1);
    const auto zs = mode_zeros(a, kPi * kPi, 1e-6, 6.0 * period);
    const double rel = zs.size() >= 3 ? std::fabs(zs[2] - zs[0] - period) / period : 1.0;
    ok = ok && rel <= 0.1;
    d += fmt("period a=%.1f rel %.3f; ", a, rel);
  }
  for (double a : {1.8, 1.9}) {
    const double tau = damping_time(a, 1.0, 1.0, 1);
    const double measured = envelope_time(a, kPi * kPi, 0.5 * transient_period(a, 1.0, 1.0, 1), 4.0 * tau);
    const double rel = std::isfinite(measured) ? std::fabs(measured - tau) / tau : 1.0;
    ok = ok && rel <= 0.2;
    d += fmt("damping a=%.1f rel %.3f; ", a, rel);
  }
  d.resize(d.size() - 2);
  return {ok, d};
}

Outcome gibbs() {
  const DiffusionProblem p = problem(ProfileKind::linear_100, 1.0);
  const ModeSpectrum s = fourier_coeffs(p, 256);
  const double partial = gibbs_overshoot(s, 1.0, 256, Summation::partial);
  const double fejer = gibbs_overshoot(s, 1.0, 256, Summation::fejer);
  return {std::fabs(partial - 0.0895) <= 0.005 && fejer <= 1e-6,
          fmt("partial overshoot %.5f (0.0895 +- 0.005), Fejer %.2e (1e-6)", partial, fejer)};
}

Outcome oracle_equivalence() {
  const std::vector<double> times{0.05, 0.1, 0.25, 0.5};
  const std::vector<double> xs = linspace(0.0, 1.0, 51);
  double worst = 0.0;
  int not_better = 0;
  for (ProfileKind k : {ProfileKind::linear_100, ProfileKind::quadratic}) {
    for (double a : {0.3, 0.5, 0.8, 1.3, 1.7}) {
      const DiffusionProblem p = problem(k, a);
      const SolutionField spec = evaluate(p, fourier_coeffs(p, 500), times, xs);
      const double e1 = relative_l2(fd_solve(p, 0.0, 0.0, FDGrid{2000, 201, 0.5}, times, xs), spec);
      const double e2 = relative_l2(fd_solve(p, 0.0, 0.0, FDGrid{4000, 201, 0.5}, times, xs), spec);
      worst = std::max(worst, e1);
      if (!(e2 < e1)) ++not_better;
    }
  }
  return {worst <= 1e-2 && not_better == 0,
          fmt("max rel L2 %.3e (1e-2), %d of 10 cases not improved by halving dt", worst, not_better)};
}

Outcome caputo_residual() {
  const double dt = 1e-4;
  const int n = 10000;
  double worst = 0.0;
  struct Pair {
    double a, c;
  };
  for (const Pair pc : {Pair{0.3, 1.0}, Pair{0.5, 2.0}, Pair{0.7, 0.5}, Pair{0.9, 3.0}, Pair{1.2, 1.0},
                        Pair{1.5, 0.5}, Pair{1.7, 1.0}, Pair{1.9, 0.3}}) {
    std::vector<double> f(n + 1);
    for (int i = 0; i <= n; ++i) f[i] = mittag_leffler(pc.a, 1.0, -pc.c * std::pow(i * dt, pc.a));
    const std::optional<double> slope = pc.a > 1.0 ? std::optional<double>(0.0) : std::nullopt;
    for (int j = 1; j <= 10; ++j) {
      const double t = 0.1 * j;
      const double e = f[static_cast<std::size_t>(1000 * j)];
      const double d = caputo_quadrature(f, dt, pc.a, t, slope);
      worst = std::max(worst, std::fabs(d + pc.c * e) / std::fabs(pc.c * e));
    }
  }
  return {worst <= 1e-2, fmt("max relative residual %.3e (1e-2)", worst)};
}

Outcome pennes() {
  const PennesParams liver = load_preset(kRoot / "presets/liver.preset");
  PennesParams p = liver;
  p.alpha = 2.0;
  const double offset = pennes_offset(p);
  const double expect = p.T_b + 2.0 * p.T_h / 3.0 + p.Q_meta / (p.rho_b * p.c_b * p.omega_b);
  const double p0 = pennes_periods(p, 1).p0;
  const std::vector<double> times{0.0, 25.0, 50.0, 75.0, 100.0};
  std::vector<double> shifted;
  for (double t : times) shifted.push_back(t + p0);
  const auto xs = linspace(0.0, p.L, 201);
  const SolutionField a = pennes_alpha2_eval(p, times, xs, 500);
  const SolutionField b = pennes_alpha2_eval(p, shifted, xs, 500);
  double dist = 0.0;
  for (std::size_t it = 0; it < times.size(); ++it) {
    std::vector<double> ua(xs.size()), ub(xs.size());
    for (std::size_t ix = 0; ix < xs.size(); ++ix) ua[ix] = a.at(it, ix), ub[ix] = b.at(it, ix);
    dist = std::max(dist, profile_distance(ub, ua, xs[1] - xs[0]));
  }
  const bool ok = std::fabs(offset - expect) <= 1e-12 * expect && std::fabs(p0 - 152.0) <= 0.5 && dist <= 0.1;
  return {ok, fmt("offset diff %.1e, p0 %.3f s (152), period distance %.4f (0.1)", std::fabs(offset - expect), p0,
                  dist)};
}

Outcome semi_infinite() {
  double e_img = 0.0, e_lap = 0.0, e_scale = 0.0;
  SemiInfProblem p;
  for (double T : {0.0, 0.7}) {
    p.T_init = T;
    for (int i = 0; i < 10; ++i) {
      const double t = 0.1 * (i + 1);
      for (int j = 0; j < 10; ++j) {
        const double x = 3.0 * j / 9.0;
        const double ref = erf_solution(p, t, x);
        e_img = std::max(e_img, std::fabs(images_solution(p, t, x) - ref));
        e_lap = std::max(e_lap, std::fabs(laplace_solution(p, t, x) - ref));
        e_scale = std::max(e_scale, std::fabs(ref - erf_solution(p, 4 * t, 2 * x)));
        e_scale = std::max(e_scale, std::fabs(laplace_solution(p, t, x) - laplace_solution(p, 4 * t, 2 * x)));
      }
    }
  }
  return {e_img <= 1e-5 && e_lap <= 1e-8 && e_scale <= 1e-10,
          fmt("images %.2e (1e-5), Laplace %.2e (1e-8), scaling %.2e (1e-10)", e_img, e_lap, e_scale)};
}

Outcome algebraic_tail() {
  double worst = 0.0;
  for (double a : {0.3, 0.7}) {
    const DiffusionProblem p = problem(ProfileKind::sine_pi, a);
    const double t = std::pow(1e4, 1.0 / a);
    const double amp = evaluate(p, fourier_coeffs(p, 1), {t}, {0.5}).at(0, 0);
    const double expect = 1.0 / (kPi * kPi * std::tgamma(1.0 - a));
    worst = std::max(worst, std::fabs(amp * std::pow(t, a) - expect) / expect);
  }
  return {worst <= 0.05, fmt("max relative deviation %.4f (0.05)", worst)};
}

Outcome crossover() {
  const DiffusionProblem p = problem(ProfileKind::quartic, 1.0);
  const std::vector<double> alphas{0.1, 0.3, 0.7, 1.0};
  const CrossoverResult r = crossover_time(p, alphas);
  const auto s = profile_spread(p, alphas, {r.t_cross / 10.0, r.t_cross, 10.0 * r.t_cross});
  const bool ok = r.t_cross >= 0.3 && r.t_cross <= 3.0 && s[1] < s[0] && s[1] < s[2];
  return {ok, fmt("t_cross %.4g in [0.3, 3]; spread %.3e at t/10, %.3e at t, %.3e at 10t", r.t_cross, s[0], s[1],
                  s[2])};
}

Outcome determinism() {
  const fs::path base = fs::temp_directory_path() / "fracheat_acceptance";
  fs::remove_all(base);
  int files = 0, differ = 0, scenarios = 0;
  double slowest = 0.0;
  std::string slow_name;
  std::vector<fs::path> cfgs;
  for (const auto& e : fs::directory_iterator(kRoot / "scenarios"))
    if (e.path().extension() == ".cfg") cfgs.push_back(e.path());
  std::sort(cfgs.begin(), cfgs.end());
  for (const auto& cfg : cfgs) {
    const Scenario s = parse_config(cfg);
    std::vector<std::string> first;
    for (int rep = 0; rep < 2; ++rep) {
      RunOptions opt;
      opt.out_dir = base / std::to_string(rep);
      const auto t0 = std::chrono::steady_clock::now();
      const RunReport r = run(s, opt);
      const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      if (wall > slowest) slowest = wall, slow_name = s.name;
      for (std::size_t i = 0; i < r.csv_files.size(); ++i) {
        const std::string data = slurp(r.csv_files[i]);
        if (rep == 0) {
          first.push_back(data);
          ++files;
        } else if (i >= first.size() || first[i] != data) {
          ++differ;
        }
      }
    }
    ++scenarios;
  }
  fs::remove_all(base);
  return {differ == 0 && files > 0, fmt("%d scenarios, %d CSV files, %d differ; slowest run %.2f s (%s)", scenarios,
                                        files, differ, slowest, slow_name.c_str())};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> check;
  };
  const std::vector<Criterion> criteria{
      {"integer-order reductions", integer_reductions},
      {"Mittag-Leffler identities", ml_identities},
      {"monotone decay below order one", monotonicity},
      {"oscillation regime", oscillation},
      {"Gibbs and Fejer", gibbs},
      {"spectral vs finite differences", oracle_equivalence},
      {"Caputo eigenfunction residual", caputo_residual},
      {"Pennes offset, period, recurrence", pennes},
      {"semi-infinite three-way agreement", semi_infinite},
      {"long-time algebraic tail", algebraic_tail},
      {"crossover estimator", crossover},
      {"determinism of shipped scenarios", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) ++failed;
    std::printf("%s %2zu %s: %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].name, o.detail.c_str(),
                wall);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
