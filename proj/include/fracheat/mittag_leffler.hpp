#pragma once

// Two-parameter Mittag-Leffler function E_{a,b}(z) = sum_n z^n / Gamma(a n + b)
// on the real axis, 0 < a <= 2, b > 0.
//
// The negative axis is the one the diffusion solvers need. Evaluation there is
// split into four regimes:
//   * power series (|z| up to max(10, 5^a), while the alternating sum keeps
//     enough digits),
//   * the large-argument expansion: damped oscillatory residue term for
//     1 < a <= 2 plus the algebraic sum -sum_n (-x)^-n / Gamma(b - a n),
//   * closed forms for a = 1 (integer b) and a = 2 (b = 1, 2),
//   * everything else: the Laplace inversion of s^(a-b)/(s^a + 1) collapsed
//     onto the branch cut, which leaves a real, positive-range integral plus
//     the same residue term; integrated with tanh-sinh quadrature.

#include <string_view>

namespace fracheat {

struct MLParams {
  double alpha;
  double beta;
};

enum class MLMethod { series, asymptotic_neg, asymptotic_pos, contour_integral, closed_form };

std::string_view to_string(MLMethod m) noexcept;

struct MLEvalResult {
  double value = 0.0;
  MLMethod method = MLMethod::series;
  /// Bound on the truncation error of the expansion that produced `value`.
  /// Rounding is only folded in when the alternating series lost more than
  /// six digits to cancellation.
  double est_abs_error = 0.0;
  int terms_used = 0;
};

namespace ml {

inline constexpr int kSeriesTermCap = 250;
inline constexpr double kSeriesTarget = 1e-10;
inline constexpr double kAsymptoticTarget = 1e-8;
/// Largest |term| / |sum| the series may accumulate before the cancellation
/// guard adds a rounding estimate to est_abs_error.
inline constexpr double kCancellationGuard = 1e6;

/// |z| below which ml_eval prefers the power series: max(10, 5^alpha).
double switch_radius(double alpha) noexcept;

}  // namespace ml

/// Partial sum of the defining series with remainder bound <= tol.
/// Throws TermCapExceeded if that needs more than ml::kSeriesTermCap terms.
MLEvalResult ml_series(MLParams p, double z, double tol);

/// Large-x expansion of E_{a,b}(-x). n_terms <= 0 selects optimal truncation
/// (stop at the smallest algebraic term). est_abs_error is the first omitted
/// non-vanishing algebraic term. Throws OutOfRegime for x < 1.
MLEvalResult ml_asymptotic_neg(MLParams p, double x, int n_terms = 0);

/// Large-x expansion of E_{a,b}(+x): (1/a) x^((1-b)/a) exp(x^(1/a)) minus the
/// algebraic sum. Relative accuracy only.
MLEvalResult ml_asymptotic_pos(MLParams p, double x, int n_terms = 0);

/// E_{a,b}(-x) for x > 0 through the branch-cut integral. a in (0, 2].
MLEvalResult ml_contour(MLParams p, double x);

/// Regime dispatcher. Throws UnsupportedOrder if alpha is outside (0, 2],
/// InvalidArgument if beta <= 0.
MLEvalResult ml_eval(MLParams p, double z);

inline double mittag_leffler(double alpha, double beta, double z) {
  return ml_eval({alpha, beta}, z).value;
}

/// dE_{a,b}/dz. Termwise differentiated series near the origin, the
/// recurrence a z E' = E_{a,b-1} - (b-1) E_{a,b} further out.
double ml_derivative(MLParams p, double z);

/// Smallest positive zero of x -> E_{a,1}(-x^a), for 1 < a <= 2.
/// Throws NoZero for a <= 1 (the function is positive there).
double ml_zero_smallest(double alpha);

/// Laplace transform of t^(a n + b - 1) E^(n)_{a,b}(sign * c t^a) at p,
/// n! p^(a-b) / (p^a - sign c)^(n+1). E^(n) is the n-th derivative with
/// respect to the argument. Throws DivergentTransform when the defining
/// integral does not converge.
double ml_laplace_pair(MLParams p, int n, double c, int sign, double pvar);

}  // namespace fracheat
