#pragma once

// Time-fractional Pennes bioheat equation
//   rho_t c_t tau^(a-1) d^a T/dt^a = k T_xx + Q_meta - rho_b c_b omega_b (T - T_b)
// reduced to d^a T/dt^a = D T_xx - D gamma T + delta and solved with
// perfusion-shifted Mittag-Leffler modes.

#include <string>
#include <vector>

#include "fracheat/spectral.hpp"

namespace fracheat {

struct PennesParams {
  double rho_t = 1079.0;   // kg/m^3
  double c_t = 3540.0;     // J/(kg K)
  double k_cond = 0.52;    // W/(m K)
  double Q_meta = 0.0;     // W/m^3
  double rho_b = 1060.0;   // kg/m^3
  double c_b = 3770.0;     // J/(kg K)
  double omega_b = 0.01;   // 1/s
  double T_b = 37.0;       // degC
  double tau_dim = 16.0;   // s
  double alpha = 1.0;
  double L = 0.2;          // m
  double T_h = 100.0;      // K
};

/// Throws ValidationError naming the violated invariant.
void validate(const PennesParams& p);

struct ReducedParams {
  double D = 0.0;
  double gamma = 0.0;
  double delta = 0.0;
};

ReducedParams reduce_params(const PennesParams& p);

/// quadratic: the heated-centre profile, modes cos((m pi/L)(2x + L)).
/// linear: ramp to T_h at x = L on the Dirichlet sin basis.
enum class PennesProfile { quadratic, linear };

std::string to_string(PennesProfile p);
PennesProfile pennes_profile_from_string(const std::string& s);

/// Steady part of the closed-form series.
/// quadratic: T_b + 2 T_h/3 + Q_meta/(rho_b c_b omega_b); linear: T_b + Q_meta/(rho_b c_b omega_b).
double pennes_offset(const PennesParams& p, PennesProfile profile = PennesProfile::quadratic);

/// Temperature the homogenised problem relaxes to, delta/(D gamma).
double pennes_equilibrium(const PennesParams& p);

/// Closed-form spectrum, modes m = 1..M, rate D((m pi/L)^2 + gamma).
ModeSpectrum pennes_spectrum(const PennesParams& p, int M, PennesProfile profile = PennesProfile::quadratic);

SolutionField pennes_eval(const PennesParams& p, const std::vector<double>& times, const std::vector<double>& xs,
                          int M, PennesProfile profile = PennesProfile::quadratic,
                          Summation summation = Summation::partial, int order = 0);

/// alpha = 2: cos(sqrt(rate) t) time factors, no Mittag-Leffler calls.
SolutionField pennes_alpha2_eval(const PennesParams& p, const std::vector<double>& times,
                                 const std::vector<double>& xs, int M,
                                 PennesProfile profile = PennesProfile::quadratic);

struct PennesPeriods {
  double p0 = 0.0;
  std::vector<double> pm;  // pm[m-1] for m = 1..m_max
};

/// p0 = 2 pi rho_t c_t tau / (rho_b c_b omega_b), p_m = 4 L^2 sqrt(gamma) / (m^2 pi).
PennesPeriods pennes_periods(const PennesParams& p, int m_max);

/// Dirichlet sin-basis solution of the reduced equation with T = equilibrium
/// at both ends, started from the t = 0 limit of the closed-form series.
/// Serves as the reference the finite-difference solver is compared with.
ModeSpectrum pennes_sine_spectrum(const PennesParams& p, int M, PennesProfile profile = PennesProfile::quadratic);

/// t = 0 limit of the closed-form series (equilibrium plus the heated bump).
double pennes_initial_value(const PennesParams& p, double x, PennesProfile profile = PennesProfile::quadratic);

/// The quadratic initial profile as stated for the heated-centre problem,
/// T_h (x - L/2)^2 / L^2 + T_h.
double pennes_stated_initial(const PennesParams& p, double x);

/// ||a - b|| / ||b|| for two profiles sampled on the same uniform grid.
double profile_distance(const std::vector<double>& a, const std::vector<double>& b, double dx);

/// Diffusion problem carrying D and alpha of the reduced equation.
DiffusionProblem pennes_problem(const PennesParams& p, PennesProfile profile = PennesProfile::quadratic);

}  // namespace fracheat
