#include "direp/rfx_bms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "direp/special_functions.hpp"

namespace direp {

LogEvidenceMatrix LogEvidenceMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) {
        throw std::invalid_argument("LogEvidenceMatrix: at least one subject required");
    }
    const std::size_t models = rows.front().size();
    if (models < 2) {
        throw std::invalid_argument("LogEvidenceMatrix: at least two models required");
    }
    std::vector<double> data;
    data.reserve(rows.size() * models);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != models) {
            throw std::invalid_argument("LogEvidenceMatrix: row " + std::to_string(i) + " has " +
                                        std::to_string(rows[i].size()) + " entries, expected " +
                                        std::to_string(models));
        }
        for (double v : rows[i]) {
            if (!std::isfinite(v)) {
                throw std::invalid_argument("LogEvidenceMatrix: non-finite entry in row " +
                                            std::to_string(i));
            }
            data.push_back(v);
        }
    }
    return LogEvidenceMatrix(rows.size(), models, std::move(data));
}

AlphaVector uniform_prior(std::size_t k) {
    return AlphaVector(std::vector<double>(k, 1.0));
}

AlphaVector vb_step(const LogEvidenceMatrix& lme, const AlphaVector& alpha,
                    const AlphaVector& alpha0) {
    const std::size_t m = lme.models();
    if (alpha.size() != m || alpha0.size() != m) {
        throw std::invalid_argument("vb_step: alpha length must match the model count");
    }
    std::vector<double> psi(m);
    for (std::size_t j = 0; j < m; ++j) {
        psi[j] = sf::digamma(alpha[j]);
    }
    // psi(alpha_s) is constant within a row, so it cancels in the normalized
    // responsibilities, as does the per-row maximum subtracted before
    // exponentiation. The shift is exact, not an approximation.
    std::vector<double> beta(m, 0.0);
    std::vector<double> w(m);
    for (std::size_t i = 0; i < lme.subjects(); ++i) {
        double row_max = -std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < m; ++j) {
            w[j] = lme(i, j) + psi[j];
            row_max = std::max(row_max, w[j]);
        }
        double row_sum = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            w[j] = std::exp(w[j] - row_max);
            row_sum += w[j];
        }
        for (std::size_t j = 0; j < m; ++j) {
            beta[j] += w[j] / row_sum;
        }
    }
    std::vector<double> next(m);
    for (std::size_t j = 0; j < m; ++j) {
        next[j] = alpha0[j] + beta[j];
    }
    return AlphaVector(std::move(next));
}

BmsResult vb_estimate(const LogEvidenceMatrix& lme, const AlphaVector& alpha0, double tol,
                      int max_iter, const quad::Config& ep_cfg) {
    if (!(tol > 0.0)) {
        throw std::invalid_argument("vb_estimate: tol must be positive");
    }
    if (max_iter < 1) {
        throw std::invalid_argument("vb_estimate: max_iter must be positive");
    }
    AlphaVector alpha = alpha0;
    int iterations = 0;
    bool converged = false;
    while (iterations < max_iter) {
        AlphaVector next = vb_step(lme, alpha, alpha0);
        ++iterations;
        double delta = 0.0;
        for (std::size_t j = 0; j < alpha.size(); ++j) {
            delta = std::max(delta, std::fabs(next[j] - alpha[j]));
        }
        alpha = std::move(next);
        if (delta < tol) {
            converged = true;
            break;
        }
    }

    const double alpha_sum = alpha.sum();
    std::vector<double> freq(alpha.size());
    for (std::size_t j = 0; j < alpha.size(); ++j) {
        freq[j] = alpha[j] / alpha_sum;
    }
    ExceedanceVector exceedance = ep_auto(alpha, ep_cfg);
    return BmsResult{std::move(alpha), std::move(freq), std::move(exceedance), iterations,
                     converged};
}

BmsResult vb_estimate(const LogEvidenceMatrix& lme) {
    return vb_estimate(lme, uniform_prior(lme.models()));
}

ExceedanceVector family_ep(const BmsResult& result, const Partition& part) {
    return ep_auto(agglomerate(result.alpha_post, part));
}

}  // namespace direp
