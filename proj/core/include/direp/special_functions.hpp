#pragma once

// Scalar special-function kernel. All functions are pure, thread-safe and
// throw std::domain_error on arguments outside their domain. Iterative
// evaluations are capped at 300 iterations; exceeding the cap throws
// direp::ConvergenceError rather than returning a silently wrong value.

namespace direp::sf {

/// log Gamma(x) for x > 0. Relative accuracy ~1e-14 over [1e-6, 1e6].
double ln_gamma(double x);

/// Regularized lower incomplete gamma P(a,x) = gamma(a,x)/Gamma(a),
/// the CDF of a Gamma(a,1) variate. a > 0, x >= 0.
double reg_lower_inc_gamma(double a, double x);

/// Regularized incomplete beta I_x(a,b) = B(x;a,b)/B(a,b),
/// the CDF of a Beta(a,b) variate. 0 <= x <= 1, a > 0, b > 0.
double reg_inc_beta(double x, double a, double b);

/// Digamma psi(x) for x > 0. Absolute accuracy ~1e-13 for x >= 1e-3.
double digamma(double x);

}  // namespace direp::sf
