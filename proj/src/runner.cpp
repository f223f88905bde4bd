#include "fracheat/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "fracheat/mittag_leffler.hpp"
#include "fracheat/oracles.hpp"
#include "fracheat/pennes.hpp"
#include "fracheat/semi_infinite.hpp"
#include "fracheat/spectral.hpp"

namespace fracheat {

namespace fs = std::filesystem;

namespace {

class CsvWriter {
 public:
  CsvWriter(const fs::path& path, const std::string& header) : out_(path, std::ios::binary) {
    require(static_cast<bool>(out_), ErrorCode::ValidationError, "cannot write '" + path.string() + "'");
    out_ << header << '\n';
  }

  CsvWriter& operator<<(double v) {
    sep();
    out_ << format_number(v);
    return *this;
  }
  CsvWriter& operator<<(int v) {
    sep();
    out_ << v;
    return *this;
  }
  CsvWriter& operator<<(std::string_view v) {
    sep();
    out_ << v;
    return *this;
  }
  void end_row() {
    out_ << '\n';
    first_ = true;
  }

 private:
  void sep() {
    if (!first_) out_ << ',';
    first_ = false;
  }
  std::ofstream out_;
  bool first_ = true;
};

std::string alpha_tag(double a) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", a);
  return buf;
}

class Context {
 public:
  Context(const Scenario& s, const RunOptions& o) : s_(s), o_(o) { fs::create_directories(o.out_dir); }

  fs::path csv(const std::string& suffix) {
    fs::path p = o_.out_dir / (s_.name + suffix + ".csv");
    report.csv_files.push_back(p);
    return p;
  }

  void put(const std::string& key, const std::string& value) { report.summary.emplace_back(key, value); }
  void put(const std::string& key, double v) { put(key, format_number(v)); }
  void put(const std::string& key, int v) { put(key, std::to_string(v)); }

  int modes() const { return o_.modes.value_or(s_.modes); }
  FejerSetting fejer() const { return o_.fejer.value_or(s_.fejer); }

  /// Summation and order for a spectrum of n modes.
  std::pair<Summation, int> summation(int n, bool has_jump) const {
    const FejerSetting f = fejer();
    switch (f.mode) {
      case FejerSetting::Mode::automatic: return {has_jump ? Summation::fejer : Summation::partial, 0};
      case FejerSetting::Mode::off: return {Summation::partial, 0};
      case FejerSetting::Mode::on: return {Summation::fejer, 0};
      case FejerSetting::Mode::order:
        require(f.order <= n, ErrorCode::ValidationError,
                "fejer order " + std::to_string(f.order) + " exceeds the " + std::to_string(n) + " modes");
        return {Summation::fejer, f.order};
    }
    return {Summation::partial, 0};
  }

  void record_field(const SolutionField& f) {
    truncation_ = std::max(truncation_, f.truncation);
    fejer_order_ = std::max(fejer_order_, f.fejer_order);
    max_err_ = std::max(max_err_, f.max_ml_error);
  }

  void write_field(const SolutionField& f, const fs::path& path) {
    record_field(f);
    CsvWriter w(path, "t,x,T");
    for (std::size_t it = 0; it < f.times.size(); ++it) {
      for (std::size_t ix = 0; ix < f.xs.size(); ++ix) {
        w << f.times[it] << f.xs[ix] << f.at(it, ix);
        w.end_row();
      }
    }
  }

  void finish(double wall) {
    std::vector<std::pair<std::string, std::string>> head{
        {"scenario", s_.name},
        {"kind", to_string(s_.kind)},
        {"truncation", std::to_string(truncation_)},
        {"fejer_order", std::to_string(fejer_order_)},
        {"max_est_abs_error", format_number(max_err_)},
    };
    if (!s_.citation.empty()) head.emplace_back("citation", s_.citation);
    report.summary.insert(report.summary.begin(), head.begin(), head.end());
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", wall);
    report.summary.emplace_back("wall_time_s", buf);

    report.summary_file = o_.out_dir / (s_.name + "_summary.txt");
    std::ofstream out(report.summary_file, std::ios::binary);
    require(static_cast<bool>(out), ErrorCode::ValidationError, "cannot write '" + report.summary_file.string() + "'");
    for (const auto& [k, v] : report.summary) out << k << " = " << v << '\n';
  }

  RunReport report;

 private:
  const Scenario& s_;
  const RunOptions& o_;
  int truncation_ = 0;
  int fejer_order_ = 0;
  double max_err_ = 0.0;
};

DiffusionProblem build_problem(const Scenario& s, double alpha) {
  DiffusionProblem p;
  if (s.nonstationary) {
    p = nonstationary_problem(s.L, s.D, alpha);
    if (alpha <= 1.0) p.initial_velocity.clear();
  } else {
    p.D = s.D;
    p.L = s.L;
    p.alpha = alpha;
    p.profile.kind = s.profile;
    p.profile.amplitude = s.amplitude;
    p.profile.samples = s.samples;
    p.bc = natural_bc(s.profile);
  }
  if (s.bc) p.bc.kind = *s.bc;
  p.bc.value = s.bc_value;
  return p;
}

ModeSpectrum build_spectrum(const Scenario& s, const DiffusionProblem& p, int M) {
  if (!s.nonstationary) return fourier_coeffs(p, M);
  ModeSpectrum sp = nonstationary_spectrum(s.L, std::max(M, 2), s.D);
  if (p.alpha <= 1.0) {
    for (auto& md : sp.modes) md.fprime = 0.0;
  }
  return sp;
}

bool profile_has_jump(const Scenario& s) {
  if (s.nonstationary) return false;
  switch (s.profile) {
    case ProfileKind::linear_100: return true;
    case ProfileKind::custom: return s.samples.front() != 0.0 || s.samples.back() != 0.0;
    default: return false;
  }
}

void run_diffusion(const Scenario& s, Context& ctx) {
  const int M = ctx.modes();
  const auto xs = linspace(0.0, s.L, s.nx);
  for (double a : s.alphas) {
    const DiffusionProblem p = build_problem(s, a);
    const ModeSpectrum sp = build_spectrum(s, p, M);
    const auto [sum, order] = ctx.summation(static_cast<int>(sp.modes.size()), profile_has_jump(s));
    const SolutionField f = evaluate(p, sp, s.times, xs, sum, order);
    ctx.write_field(f, ctx.csv("_a" + alpha_tag(a)));
  }
  if (s.crossover) {
    const CrossoverResult c = crossover_time(build_problem(s, s.alphas.front()), s.alphas);
    ctx.put("t_cross", c.t_cross);
    ctx.put("spread_at_t_cross", c.spread);
  }
}

void run_pennes(const Scenario& s, Context& ctx) {
  const int M = ctx.modes();
  const auto xs = linspace(0.0, s.pennes.L, s.nx);
  const bool jump = s.pennes_profile == PennesProfile::linear;
  {
    const ReducedParams r = reduce_params(s.pennes);
    ctx.put("offset", pennes_offset(s.pennes, s.pennes_profile));
    ctx.put("equilibrium", pennes_equilibrium(s.pennes));
    ctx.put("gamma", r.gamma);
    const PennesPeriods per = pennes_periods(s.pennes, 3);
    ctx.put("p0", per.p0);
    for (std::size_t m = 0; m < per.pm.size(); ++m) ctx.put("p" + std::to_string(m + 1), per.pm[m]);
  }
  for (double a : s.alphas) {
    PennesParams p = s.pennes;
    p.alpha = a;
    const ReducedParams r = reduce_params(p);
    ctx.put("D_a" + alpha_tag(a), r.D);
    ctx.put("delta_a" + alpha_tag(a), r.delta);
    const auto [sum, order] = ctx.summation(M, jump);
    const SolutionField f = pennes_eval(p, s.times, xs, M, s.pennes_profile, sum, order);
    ctx.write_field(f, ctx.csv("_a" + alpha_tag(a)));
  }
  if (s.period_check) {
    PennesParams p = s.pennes;
    p.alpha = 2.0;
    const double p0 = pennes_periods(p, 1).p0;
    std::vector<double> shifted;
    for (double t : s.times) shifted.push_back(t + p0);
    const SolutionField a = pennes_alpha2_eval(p, s.times, xs, M, s.pennes_profile);
    const SolutionField b = pennes_alpha2_eval(p, shifted, xs, M, s.pennes_profile);
    const double dx = xs[1] - xs[0];
    double worst = 0.0;
    CsvWriter w(ctx.csv("_period"), "t,x,T,T_shifted");
    for (std::size_t it = 0; it < s.times.size(); ++it) {
      std::vector<double> ua(xs.size());
      std::vector<double> ub(xs.size());
      for (std::size_t ix = 0; ix < xs.size(); ++ix) {
        ua[ix] = a.at(it, ix);
        ub[ix] = b.at(it, ix);
        w << s.times[it] << xs[ix] << ua[ix] << ub[ix];
        w.end_row();
      }
      worst = std::max(worst, profile_distance(ub, ua, dx));
    }
    ctx.put("period_distance_max", worst);
  }
}

void run_mlf(const Scenario& s, Context& ctx) {
  const auto xs = linspace(0.0, s.x_max, s.nx);
  CsvWriter w(ctx.csv(""), "alpha,x,E,method,est_abs_error");
  double worst = 0.0;
  for (double a : s.alphas) {
    for (double x : xs) {
      const MLEvalResult r = ml_eval({a, s.beta}, -std::pow(x, a));
      w << a << x << r.value << to_string(r.method) << r.est_abs_error;
      w.end_row();
      worst = std::max(worst, r.est_abs_error);
    }
    if (s.beta == 1.0 && a > 1.0) ctx.put("zero_smallest_a" + alpha_tag(a), ml_zero_smallest(a));
  }
  ctx.put("beta", s.beta);
  ctx.put("max_table_est_abs_error", worst);
}

void run_timescales(const Scenario& s, Context& ctx) {
  CsvWriter w(ctx.csv(""), "alpha,n,period,damping");
  for (double a : s.alphas) {
    for (const TimescaleEntry& e : timescales(a, s.D, s.L, s.n_max)) {
      w << a << e.n << e.period << e.damping;
      w.end_row();
    }
    ctx.put("zero_smallest_a" + alpha_tag(a), ml_zero_smallest(a));
  }
}

void run_oracle(const Scenario& s, Context& ctx) {
  const int M = ctx.modes();
  const auto xs = linspace(0.0, s.L, s.nx);
  double worst = 0.0;
  auto compare = [&](const SolutionField& spec, const SolutionField& fd, const std::string& tag) {
    ctx.record_field(spec);
    CsvWriter w(ctx.csv(tag), "t,x,spectral,fd");
    for (std::size_t it = 0; it < spec.times.size(); ++it) {
      for (std::size_t ix = 0; ix < spec.xs.size(); ++ix) {
        w << spec.times[it] << spec.xs[ix] << spec.at(it, ix) << fd.at(it, ix);
        w.end_row();
      }
    }
    const double e = relative_l2(fd, spec);
    ctx.put("rel_l2" + tag, e);
    worst = std::max(worst, e);
  };
  for (double a : s.alphas) {
    const std::string tag = "_a" + alpha_tag(a);
    if (s.pennes_oracle) {
      PennesParams p = s.pennes;
      p.alpha = a;
      const ReducedParams r = reduce_params(p);
      const DiffusionProblem prob = pennes_problem(p, s.pennes_profile);
      const SolutionField spec = evaluate(prob, pennes_sine_spectrum(p, M, s.pennes_profile), s.times, xs);
      const SolutionField fd =
          fd_solve_with(prob, r.D * r.gamma, r.delta, s.fd, s.times, xs,
                        [&](double x) { return pennes_initial_value(p, x, s.pennes_profile); });
      compare(spec, fd, tag);
    } else {
      const DiffusionProblem p = build_problem(s, a);
      const SolutionField spec = evaluate(p, build_spectrum(s, p, M), s.times, xs);
      const SolutionField fd = fd_solve(p, 0.0, 0.0, s.fd, s.times, xs);
      compare(spec, fd, tag);
    }
  }
  ctx.put("fd_nt", s.fd.nt);
  ctx.put("fd_nx", s.fd.nx);
  ctx.put("tolerance", s.tolerance);
  ctx.put("rel_l2_max", worst);
  ctx.put("status", worst <= s.tolerance ? "pass" : "fail");
}

void run_semiinf(const Scenario& s, Context& ctx) {
  const auto xs = linspace(0.0, s.x_max, s.nx);
  CsvWriter w(ctx.csv(""), "t,x,erf,images,laplace");
  double e_img = 0.0;
  double e_lap = 0.0;
  for (double t : s.times) {
    for (double x : xs) {
      const double u = erf_solution(s.semi, t, x);
      const double ui = images_solution(s.semi, t, x, s.quad_n);
      const double ul = laplace_solution(s.semi, t, x, s.talbot_nodes);
      e_img = std::max(e_img, std::fabs(ui - u));
      e_lap = std::max(e_lap, std::fabs(ul - u));
      w << t << x << u << ui << ul;
      w.end_row();
    }
  }
  ctx.put("max_abs_images_vs_erf", e_img);
  ctx.put("max_abs_laplace_vs_erf", e_lap);
}

void run_gibbs(const Scenario& s, Context& ctx) {
  DiffusionProblem p;
  p.L = s.L;
  p.profile.kind = ProfileKind::linear_100;
  p.profile.amplitude = s.amplitude;
  const int trunc = s.truncation;
  const ModeSpectrum sp = fourier_coeffs(p, trunc);
  const double partial = gibbs_overshoot(sp, s.L, trunc, Summation::partial);
  const double fejer = gibbs_overshoot(sp, s.L, trunc, Summation::fejer);
  const auto xs = linspace(0.0, s.L, s.nx);
  const SolutionField fp = evaluate(p, sp, {0.0}, xs, Summation::partial);
  const SolutionField ff = evaluate(p, sp, {0.0}, xs, Summation::fejer);
  ctx.record_field(ff);
  CsvWriter w(ctx.csv(""), "x,partial,fejer");
  for (std::size_t ix = 0; ix < xs.size(); ++ix) {
    w << xs[ix] << fp.at(0, ix) << ff.at(0, ix);
    w.end_row();
  }
  ctx.put("overshoot_partial", partial);
  ctx.put("overshoot_fejer", fejer);
}

}  // namespace

std::string RunReport::get(const std::string& key) const {
  for (const auto& [k, v] : summary) {
    if (k == key) return v;
  }
  return {};
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.11e", v);
  return buf;
}

int exit_code(const Error& e) noexcept { return static_cast<int>(e.category()); }

RunReport run(const Scenario& scenario, const RunOptions& options) {
  Scenario s = scenario;
  if (s.kind == ScenarioKind::gibbs && options.modes) s.truncation = *options.modes;
  validate(s);
  const auto start = std::chrono::steady_clock::now();
  Context ctx(s, options);
  switch (s.kind) {
    case ScenarioKind::diffusion: run_diffusion(s, ctx); break;
    case ScenarioKind::pennes: run_pennes(s, ctx); break;
    case ScenarioKind::mlf_table: run_mlf(s, ctx); break;
    case ScenarioKind::timescales: run_timescales(s, ctx); break;
    case ScenarioKind::oracle_compare: run_oracle(s, ctx); break;
    case ScenarioKind::semiinf: run_semiinf(s, ctx); break;
    case ScenarioKind::gibbs: run_gibbs(s, ctx); break;
  }
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  ctx.finish(wall);
  if (ctx.report.get("status") == "fail") {
    throw Error(ErrorCode::ToleranceExceeded, "relative L2 " + ctx.report.get("rel_l2_max") + " above tolerance " +
                                                  ctx.report.get("tolerance"));
  }
  return ctx.report;
}

}  // namespace fracheat
