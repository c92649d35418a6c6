#include "direp/dirichlet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "direp/errors.hpp"
#include "direp/special_functions.hpp"

namespace direp {

AlphaVector::AlphaVector(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) {
        throw std::invalid_argument("AlphaVector: at least one component required");
    }
    for (std::size_t j = 0; j < values_.size(); ++j) {
        if (!(values_[j] > 0.0) || !std::isfinite(values_[j])) {
            throw std::invalid_argument("AlphaVector: component " + std::to_string(j) +
                                        " must be strictly positive and finite");
        }
    }
}

double AlphaVector::sum() const noexcept {
    return std::accumulate(values_.begin(), values_.end(), 0.0);
}

const char* to_string(EpMethod method) noexcept {
    switch (method) {
        case EpMethod::closed_form: return "closed_form";
        case EpMethod::integration: return "integration";
        case EpMethod::sampling: return "sampling";
    }
    return "unknown";
}

double ExceedanceVector::sum_deviation() const noexcept {
    return std::accumulate(phi.begin(), phi.end(), 0.0) - 1.0;
}

Partition::Partition(std::vector<std::vector<std::size_t>> groups, std::size_t category_count)
    : groups_(std::move(groups)), category_count_(category_count) {
    if (groups_.empty()) {
        throw std::invalid_argument("Partition: at least one group required");
    }
    std::vector<bool> seen(category_count_, false);
    for (std::size_t g = 0; g < groups_.size(); ++g) {
        if (groups_[g].empty()) {
            throw std::invalid_argument("Partition: group " + std::to_string(g) + " is empty");
        }
        for (std::size_t idx : groups_[g]) {
            if (idx >= category_count_) {
                throw std::invalid_argument("Partition: index " + std::to_string(idx) +
                                            " out of range for k=" +
                                            std::to_string(category_count_));
            }
            if (seen[idx]) {
                throw std::invalid_argument("Partition: index " + std::to_string(idx) +
                                            " appears in more than one group");
            }
            seen[idx] = true;
        }
    }
    for (std::size_t idx = 0; idx < category_count_; ++idx) {
        if (!seen[idx]) {
            throw std::invalid_argument("Partition: index " + std::to_string(idx) +
                                        " is not covered by any group");
        }
    }
}

Partition Partition::trivial(std::size_t category_count) {
    std::vector<std::vector<std::size_t>> groups(category_count);
    for (std::size_t j = 0; j < category_count; ++j) {
        groups[j] = {j};
    }
    return Partition(std::move(groups), category_count);
}

double ep_integrand(double q, double alpha_j, std::span<const double> alpha_others) {
    if (!(alpha_j > 0.0)) {
        throw std::domain_error("ep_integrand: alpha_j must be positive");
    }
    if (!(q >= 0.0)) {
        throw std::domain_error("ep_integrand: q must be nonnegative");
    }
    if (q == 0.0) {
        if (!alpha_others.empty() || alpha_j > 1.0) return 0.0;
        if (alpha_j == 1.0) return 1.0;  // Gamma(1,1) density at the origin
        return std::numeric_limits<double>::infinity();  // integrable endpoint
    }
    // CDF factors live in [0,1]; their product may underflow to 0, which is
    // the correct limit. The density factor is assembled in log space.
    double product = 1.0;
    for (double alpha_i : alpha_others) {
        product *= sf::reg_lower_inc_gamma(alpha_i, q);
        if (product == 0.0) return 0.0;
    }
    const double log_density = (alpha_j - 1.0) * std::log(q) - q - sf::ln_gamma(alpha_j);
    return product * std::exp(log_density);
}

ExceedanceVector ep_bivariate(const AlphaVector& alpha) {
    if (alpha.size() != 2) {
        throw std::invalid_argument("ep_bivariate: requires exactly two categories");
    }
    const double phi1 = 1.0 - sf::reg_inc_beta(0.5, alpha[0], alpha[1]);
    return ExceedanceVector{{phi1, 1.0 - phi1}, EpMethod::closed_form, {0.0, 0.0}};
}

ExceedanceVector ep_integration(const AlphaVector& alpha, const quad::Config& cfg) {
    const std::size_t k = alpha.size();
    if (k < 2) {
        throw std::invalid_argument("ep_integration: requires at least two categories");
    }
    ExceedanceVector result;
    result.method = EpMethod::integration;
    result.phi.resize(k);
    result.diagnostics.resize(k);

    std::vector<double> others(k - 1);
    for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t i = 0, o = 0; i < k; ++i) {
            if (i != j) others[o++] = alpha[i];
        }
        const double alpha_j = alpha[j];
        auto f = [alpha_j, &others](double q) {
            return ep_integrand(q, alpha_j, others);
        };
        try {
            // Split at alpha_j (~ the density peak) so both pieces are anchored
            // where the integrand carries its mass.
            const quad::Result head = quad::integrate(f, 0.0, alpha_j, cfg);
            const quad::Result tail = quad::integrate_semi_infinite(f, alpha_j, cfg);
            result.phi[j] = head.value + tail.value;
            result.diagnostics[j] = head.error_estimate + tail.error_estimate;
        } catch (const ConvergenceError& e) {
            throw ConvergenceError("exceedance component " + std::to_string(j) + ": " + e.what(),
                                   e.best_value(), e.error_estimate());
        }
    }
    return result;
}

ExceedanceVector ep_auto(const AlphaVector& alpha, const quad::Config& cfg) {
    if (alpha.size() == 1) {
        return ExceedanceVector{{1.0}, EpMethod::closed_form, {0.0}};
    }
    if (alpha.size() == 2) {
        return ep_bivariate(alpha);
    }
    return ep_integration(alpha, cfg);
}

AlphaVector agglomerate(const AlphaVector& alpha, const Partition& part) {
    if (part.category_count() != alpha.size()) {
        throw std::invalid_argument("agglomerate: partition covers " +
                                    std::to_string(part.category_count()) +
                                    " categories, alpha has " + std::to_string(alpha.size()));
    }
    std::vector<double> grouped;
    grouped.reserve(part.group_count());
    for (const auto& group : part.groups()) {
        double s = 0.0;
        for (std::size_t idx : group) s += alpha[idx];
        grouped.push_back(s);
    }
    return AlphaVector(std::move(grouped));
}

AlphaVector posterior_from_counts(const AlphaVector& alpha0, std::span<const double> counts,
                                  bool round_to_int) {
    if (counts.size() != alpha0.size()) {
        throw std::invalid_argument("posterior_from_counts: " + std::to_string(counts.size()) +
                                    " counts for " + std::to_string(alpha0.size()) +
                                    " prior components");
    }
    std::vector<double> post(alpha0.size());
    for (std::size_t j = 0; j < alpha0.size(); ++j) {
        if (!(counts[j] >= 0.0)) {
            throw std::invalid_argument("posterior_from_counts: count " + std::to_string(j) +
                                        " is negative");
        }
        post[j] = alpha0[j] + counts[j];
        if (round_to_int) post[j] = std::round(post[j]);
    }
    return AlphaVector(std::move(post));
}

std::vector<double> dirichlet_mode(const AlphaVector& alpha) {
    for (std::size_t j = 0; j < alpha.size(); ++j) {
        if (!(alpha[j] > 1.0)) {
            throw std::domain_error("dirichlet_mode: component " + std::to_string(j) +
                                    " is <= 1, interior mode undefined");
        }
    }
    const double denom = alpha.sum() - static_cast<double>(alpha.size());
    std::vector<double> mode(alpha.size());
    for (std::size_t j = 0; j < alpha.size(); ++j) {
        mode[j] = (alpha[j] - 1.0) / denom;
    }
    return mode;
}

double threshold_probability(const AlphaVector& alpha, std::size_t j, double t) {
    if (alpha.size() < 2) {
        throw std::invalid_argument("threshold_probability: requires at least two categories");
    }
    if (j >= alpha.size()) {
        throw std::invalid_argument("threshold_probability: index " + std::to_string(j) +
                                    " out of range for k=" + std::to_string(alpha.size()));
    }
    if (!(t >= 0.0 && t <= 1.0)) {
        throw std::domain_error("threshold_probability: threshold must lie in [0,1]");
    }
    // Marginal of r_j is Beta(alpha_j, alpha_s - alpha_j).
    return 1.0 - sf::reg_inc_beta(t, alpha[j], alpha.sum() - alpha[j]);
}

}  // namespace direp
