#pragma once

#include <functional>

namespace direp::quad {

struct Config {
    double abs_tol = 1e-10;
    double rel_tol = 1e-8;
    int max_subdivisions = 2000;
};

struct Result {
    double value;
    double error_estimate;
};

using Integrand = std::function<double(double)>;

/// Adaptive 15-point Gauss-Kronrod integration of f over the finite interval
/// (lo, hi). Interval bisection is driven by per-panel error estimates until
/// the accumulated error falls below max(abs_tol, rel_tol * |value|).
/// Non-finite integrand values are treated as 0 (endpoints are never
/// evaluated, so integrable endpoint singularities are handled).
/// Throws direp::ConvergenceError when the subdivision budget runs out.
Result integrate(const Integrand& f, double lo, double hi, const Config& cfg = {});

/// Same contract over (lo, infinity), lo >= 0, for integrands decaying at
/// infinity. The tail is folded onto (0,1) by the substitution
/// x = lo + t/(1-t).
Result integrate_semi_infinite(const Integrand& f, double lo, const Config& cfg = {});

}  // namespace direp::quad
