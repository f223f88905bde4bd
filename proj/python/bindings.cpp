#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "fracheat/config.hpp"
#include "fracheat/error.hpp"
#include "fracheat/mittag_leffler.hpp"
#include "fracheat/oracles.hpp"
#include "fracheat/pennes.hpp"
#include "fracheat/runner.hpp"
#include "fracheat/semi_infinite.hpp"
#include "fracheat/spectral.hpp"

namespace py = pybind11;
using namespace fracheat;

namespace {

py::array_t<double> as_array(const SolutionField& f) {
  py::array_t<double> out({f.times.size(), f.xs.size()});
  std::copy(f.values.begin(), f.values.end(), out.mutable_data());
  return out;
}

DiffusionProblem make_problem(double D, double L, double alpha, const std::string& profile, double amplitude) {
  DiffusionProblem p;
  p.D = D;
  p.L = L;
  p.alpha = alpha;
  p.profile.kind = profile_from_string(profile);
  p.profile.amplitude = amplitude;
  p.bc = natural_bc(p.profile.kind);
  return p;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Time-fractional diffusion and bioheat solvers";

  static py::exception<Error> error_type(m, "FracheatError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error_type, e.what());
    }
  });

  py::class_<MLEvalResult>(m, "MLEvalResult")
      .def_readonly("value", &MLEvalResult::value)
      .def_property_readonly("method", [](const MLEvalResult& r) { return std::string(to_string(r.method)); })
      .def_readonly("est_abs_error", &MLEvalResult::est_abs_error)
      .def_readonly("terms_used", &MLEvalResult::terms_used);

  m.def("ml_eval", [](double a, double b, double z) { return ml_eval({a, b}, z); }, py::arg("alpha"),
        py::arg("beta"), py::arg("z"));
  m.def("mittag_leffler", py::vectorize(&mittag_leffler), py::arg("alpha"), py::arg("beta"), py::arg("z"));
  m.def("ml_derivative", [](double a, double b, double z) { return ml_derivative({a, b}, z); }, py::arg("alpha"),
        py::arg("beta"), py::arg("z"));
  m.def("ml_zero_smallest", &ml_zero_smallest, py::arg("alpha"));

  m.def(
      "solve",
      [](double D, double L, double alpha, const std::string& profile, const std::vector<double>& times,
         const std::vector<double>& xs, int modes, bool fejer, double amplitude) {
        const DiffusionProblem p = make_problem(D, L, alpha, profile, amplitude);
        return as_array(
            evaluate(p, fourier_coeffs(p, modes), times, xs, fejer ? Summation::fejer : Summation::partial));
      },
      py::arg("D"), py::arg("L"), py::arg("alpha"), py::arg("profile"), py::arg("times"), py::arg("xs"),
      py::arg("modes") = kDefaultModes, py::arg("fejer") = false, py::arg("amplitude") = 100.0);

  m.def(
      "fd_solve",
      [](double D, double L, double alpha, const std::string& profile, const std::vector<double>& times,
         const std::vector<double>& xs, int nt, int nx, double amplitude) {
        const DiffusionProblem p = make_problem(D, L, alpha, profile, amplitude);
        FDGrid g{nt, nx, times.empty() ? 1.0 : times.back()};
        return as_array(fd_solve(p, 0.0, 0.0, g, times, xs));
      },
      py::arg("D"), py::arg("L"), py::arg("alpha"), py::arg("profile"), py::arg("times"), py::arg("xs"),
      py::arg("nt") = 2000, py::arg("nx") = 201, py::arg("amplitude") = 100.0);

  m.def("transient_period", &transient_period, py::arg("alpha"), py::arg("D"), py::arg("L"), py::arg("n"));
  m.def("damping_time", &damping_time, py::arg("alpha"), py::arg("D"), py::arg("L"), py::arg("n"));
  m.def(
      "gibbs_overshoot",
      [](int truncation, bool fejer) {
        DiffusionProblem p;
        return gibbs_overshoot(fourier_coeffs(p, truncation), p.L, truncation,
                               fejer ? Summation::fejer : Summation::partial);
      },
      py::arg("truncation") = 256, py::arg("fejer") = false);

  py::class_<PennesParams>(m, "PennesParams")
      .def(py::init<>())
      .def_readwrite("rho_t", &PennesParams::rho_t)
      .def_readwrite("c_t", &PennesParams::c_t)
      .def_readwrite("k_cond", &PennesParams::k_cond)
      .def_readwrite("Q_meta", &PennesParams::Q_meta)
      .def_readwrite("rho_b", &PennesParams::rho_b)
      .def_readwrite("c_b", &PennesParams::c_b)
      .def_readwrite("omega_b", &PennesParams::omega_b)
      .def_readwrite("T_b", &PennesParams::T_b)
      .def_readwrite("tau_dim", &PennesParams::tau_dim)
      .def_readwrite("alpha", &PennesParams::alpha)
      .def_readwrite("L", &PennesParams::L)
      .def_readwrite("T_h", &PennesParams::T_h);

  m.def("load_preset", [](const std::filesystem::path& p) { return load_preset(p); }, py::arg("path"));
  m.def(
      "reduce_params",
      [](const PennesParams& p) {
        const ReducedParams r = reduce_params(p);
        return py::dict(py::arg("D") = r.D, py::arg("gamma") = r.gamma, py::arg("delta") = r.delta);
      },
      py::arg("params"));
  m.def("pennes_offset", [](const PennesParams& p) { return pennes_offset(p); }, py::arg("params"));
  m.def(
      "pennes_periods",
      [](const PennesParams& p, int m_max) {
        const PennesPeriods r = pennes_periods(p, m_max);
        return py::make_tuple(r.p0, r.pm);
      },
      py::arg("params"), py::arg("m_max") = 3);
  m.def(
      "pennes_eval",
      [](const PennesParams& p, const std::vector<double>& times, const std::vector<double>& xs, int modes,
         bool fejer) {
        return as_array(pennes_eval(p, times, xs, modes, PennesProfile::quadratic,
                                    fejer ? Summation::fejer : Summation::partial));
      },
      py::arg("params"), py::arg("times"), py::arg("xs"), py::arg("modes") = kDefaultModes,
      py::arg("fejer") = false);

  m.def(
      "erf_solution", [](double D, double T, double t, double x) { return erf_solution({D, T}, t, x); },
      py::arg("D"), py::arg("T_init"), py::arg("t"), py::arg("x"));
  m.def(
      "images_solution", [](double D, double T, double t, double x) { return images_solution({D, T}, t, x); },
      py::arg("D"), py::arg("T_init"), py::arg("t"), py::arg("x"));
  m.def(
      "laplace_solution", [](double D, double T, double t, double x) { return laplace_solution({D, T}, t, x); },
      py::arg("D"), py::arg("T_init"), py::arg("t"), py::arg("x"));

  m.def(
      "run_scenario",
      [](const std::filesystem::path& config, const std::filesystem::path& out_dir) {
        RunOptions opt;
        opt.out_dir = out_dir;
        const RunReport r = run(parse_config(config), opt);
        py::dict summary;
        for (const auto& [k, v] : r.summary) summary[py::str(k)] = v;
        return py::make_tuple(r.csv_files, summary);
      },
      py::arg("config"), py::arg("out_dir"));
}
