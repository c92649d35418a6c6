#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "direp/quadrature.hpp"

namespace direp {

// Dirichlet concentration parameters. Validates on construction:
// at least one component, all components strictly positive and finite.
class AlphaVector {
public:
    explicit AlphaVector(std::vector<double> values);

    std::size_t size() const noexcept { return values_.size(); }
    double operator[](std::size_t j) const noexcept { return values_[j]; }
    const std::vector<double>& values() const noexcept { return values_; }
    double sum() const noexcept;

    auto begin() const noexcept { return values_.begin(); }
    auto end() const noexcept { return values_.end(); }

private:
    std::vector<double> values_;
};

enum class EpMethod { closed_form, integration, sampling };

const char* to_string(EpMethod method) noexcept;

// Exceedance probabilities phi, one per category, together with how they were
// obtained. diagnostics holds a per-entry quadrature error estimate
// (integration), a per-entry Monte-Carlo standard error (sampling), or zeros
// (closed form). The raw phi vector is never renormalized; sum_deviation()
// is the caller's accuracy certificate.
struct ExceedanceVector {
    std::vector<double> phi;
    EpMethod method = EpMethod::closed_form;
    std::vector<double> diagnostics;

    double sum_deviation() const noexcept;  // sum(phi) - 1
};

// Ordered list of disjoint, covering, nonempty index groups over
// {0, ..., k-1}. Construction validates and names offending indices.
class Partition {
public:
    Partition(std::vector<std::vector<std::size_t>> groups, std::size_t category_count);

    static Partition trivial(std::size_t category_count);

    const std::vector<std::vector<std::size_t>>& groups() const noexcept { return groups_; }
    std::size_t group_count() const noexcept { return groups_.size(); }
    std::size_t category_count() const noexcept { return category_count_; }

private:
    std::vector<std::vector<std::size_t>> groups_;
    std::size_t category_count_;
};

struct SamplingConfig {
    std::uint64_t samples = 1'000'000;
    std::uint64_t seed = 0;
};

using RngState = std::mt19937_64;

/// Deterministic per-task seed from a master seed and task index, so batch
/// results are independent of scheduling.
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t task_index);

/// One draw from Gamma(shape, 1). shape > 0.
double sample_gamma(double shape, RngState& rng);

/// One draw from Dir(alpha): k independent Gamma(alpha_j, 1) draws divided by
/// their sum. Resamples (up to 100 attempts) if every draw underflowed to 0.
std::vector<double> sample_dirichlet(const AlphaVector& alpha, RngState& rng);
void sample_dirichlet(const AlphaVector& alpha, RngState& rng, std::span<double> out);

/// Integrand of the EP integral for component j: the product of Gamma(alpha_i,1)
/// CDFs at q over i != j, times the Gamma(alpha_j,1) density at q. The density
/// factor is assembled in log space so no intermediate overflows; the CDF
/// product underflows gracefully to 0.
double ep_integrand(double q, double alpha_j, std::span<const double> alpha_others);

/// Closed-form EP for k = 2: phi_1 = 1 - I_{1/2}(alpha_1, alpha_2).
ExceedanceVector ep_bivariate(const AlphaVector& alpha);

/// EP by numerical integration for k >= 2. Each component integrates
/// ep_integrand over (0, alpha_j) plus (alpha_j, infinity).
ExceedanceVector ep_integration(const AlphaVector& alpha, const quad::Config& cfg = {});

/// EP by Monte-Carlo argmax frequency over cfg.samples Dirichlet draws.
/// Ties go to the lowest index. Deterministic for a fixed seed.
ExceedanceVector ep_sampling(const AlphaVector& alpha, const SamplingConfig& cfg);

/// Dispatch: k = 1 -> [1], k = 2 -> closed form, k > 2 -> integration.
ExceedanceVector ep_auto(const AlphaVector& alpha, const quad::Config& cfg = {});

/// Sum alpha components over each partition group (the agglomerated
/// distribution is again Dirichlet with these parameters).
AlphaVector agglomerate(const AlphaVector& alpha, const Partition& part);

/// Posterior concentration alpha_0 + counts for a Multinomial-Dirichlet
/// model. With round_to_int, components are rounded half away from zero.
AlphaVector posterior_from_counts(const AlphaVector& alpha0, std::span<const double> counts,
                                  bool round_to_int = false);

/// Mode of Dir(alpha): (alpha_j - 1)/(alpha_s - k). Requires every
/// alpha_j > 1, otherwise the interior mode does not exist.
std::vector<double> dirichlet_mode(const AlphaVector& alpha);

/// p(r_j > t) from the Beta(alpha_j, alpha_s - alpha_j) marginal; j is a
/// zero-based index. Distinct from the exceedance probability: for k > 2,
/// phi_j exceeds this at t = 1/2.
double threshold_probability(const AlphaVector& alpha, std::size_t j, double t);

}  // namespace direp
