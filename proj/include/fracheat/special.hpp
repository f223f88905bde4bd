#pragma once

// Scalar special functions shared by the solver modules.

namespace fracheat {

/// 1/Gamma(x), continued by zero at the poles x = 0, -1, -2, ...
double rgamma(double x) noexcept;

/// log|Gamma(x)| without touching the global `signgam`.
double log_abs_gamma(double x) noexcept;

/// Error function, accurate to a few ulp over the whole real line.
/// Power series (no cancellation form) below |x| = 2.5, Lentz continued
/// fraction for erfc above.
double erf(double x) noexcept;
double erfc(double x) noexcept;

}  // namespace fracheat
