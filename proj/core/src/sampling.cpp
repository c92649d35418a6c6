#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "direp/dirichlet.hpp"

namespace direp {

namespace {

// Uniform on (0,1), strictly positive so log() is safe.
inline double uniform01(RngState& rng) {
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

// Box-Muller; one normal per call keeps the sampler stateless.
inline double normal01(RngState& rng) {
    const double u1 = uniform01(rng);
    const double u2 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

// Marsaglia-Tsang squeeze method for shape >= 1.
double gamma_shape_ge1(double shape, RngState& rng) {
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        const double x = normal01(rng);
        const double t = 1.0 + c * x;
        if (t <= 0.0) continue;
        const double v = t * t * t;
        const double u = uniform01(rng);
        if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t task_index) {
    // splitmix64 over master + odd stride keeps per-task streams decorrelated.
    std::uint64_t z = master_seed + 0x9E3779B97F4A7C15ull * (task_index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

double sample_gamma(double shape, RngState& rng) {
    if (!(shape > 0.0)) {
        throw std::domain_error("sample_gamma: shape must be positive");
    }
    if (shape < 1.0) {
        // Boost a shape+1 draw down: q = q' * U^(1/shape).
        const double u = uniform01(rng);
        return gamma_shape_ge1(shape + 1.0, rng) * std::pow(u, 1.0 / shape);
    }
    return gamma_shape_ge1(shape, rng);
}

void sample_dirichlet(const AlphaVector& alpha, RngState& rng, std::span<double> out) {
    if (out.size() != alpha.size()) {
        throw std::invalid_argument("sample_dirichlet: output span has wrong length");
    }
    for (int attempt = 0; attempt < 100; ++attempt) {
        double total = 0.0;
        for (std::size_t j = 0; j < alpha.size(); ++j) {
            out[j] = sample_gamma(alpha[j], rng);
            total += out[j];
        }
        if (total > 0.0) {
            for (std::size_t j = 0; j < alpha.size(); ++j) out[j] /= total;
            return;
        }
        // All draws underflowed to zero (possible only at tiny shapes); resample.
    }
    throw std::runtime_error("sample_dirichlet: 100 consecutive all-zero gamma draws");
}

std::vector<double> sample_dirichlet(const AlphaVector& alpha, RngState& rng) {
    std::vector<double> draw(alpha.size());
    sample_dirichlet(alpha, rng, draw);
    return draw;
}

ExceedanceVector ep_sampling(const AlphaVector& alpha, const SamplingConfig& cfg) {
    const std::size_t k = alpha.size();
    if (k < 2) {
        throw std::invalid_argument("ep_sampling: requires at least two categories");
    }
    if (cfg.samples < 1) {
        throw std::invalid_argument("ep_sampling: at least one sample required");
    }
    RngState rng(cfg.seed);
    std::vector<double> draw(k);
    std::vector<std::uint64_t> wins(k, 0);
    for (std::uint64_t n = 0; n < cfg.samples; ++n) {
        sample_dirichlet(alpha, rng, draw);
        // Strict comparison; a tie (measure-zero) stays with the lowest index.
        std::size_t argmax = 0;
        for (std::size_t j = 1; j < k; ++j) {
            if (draw[j] > draw[argmax]) argmax = j;
        }
        ++wins[argmax];
    }
    ExceedanceVector result;
    result.method = EpMethod::sampling;
    result.phi.resize(k);
    result.diagnostics.resize(k);
    const double s = static_cast<double>(cfg.samples);
    for (std::size_t j = 0; j < k; ++j) {
        const double phi = static_cast<double>(wins[j]) / s;
        result.phi[j] = phi;
        result.diagnostics[j] = std::sqrt(phi * (1.0 - phi) / s);
    }
    return result;
}

}  // namespace direp
