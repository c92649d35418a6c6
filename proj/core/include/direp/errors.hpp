#pragma once

#include <stdexcept>
#include <string>

namespace direp {

// Thrown when an iterative evaluation (series, continued fraction, adaptive
// quadrature) exhausts its budget without meeting tolerance. Carries the best
// estimate obtained so far so callers can inspect how far off it was.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double best_value, double error_estimate)
        : std::runtime_error(what), best_value_(best_value), error_estimate_(error_estimate) {}

    double best_value() const noexcept { return best_value_; }
    double error_estimate() const noexcept { return error_estimate_; }

private:
    double best_value_;
    double error_estimate_;
};

}  // namespace direp
