#pragma once

#include <cstddef>
#include <vector>

#include "direp/dirichlet.hpp"

namespace direp {

// N x M matrix of log model evidences log p(y_i | m_j): one row per subject,
// one column per model. All entries must be finite, rows rectangular,
// N >= 1, M >= 2.
class LogEvidenceMatrix {
public:
    static LogEvidenceMatrix from_rows(const std::vector<std::vector<double>>& rows);

    std::size_t subjects() const noexcept { return subjects_; }
    std::size_t models() const noexcept { return models_; }
    double operator()(std::size_t i, std::size_t j) const noexcept {
        return data_[i * models_ + j];
    }

private:
    LogEvidenceMatrix(std::size_t subjects, std::size_t models, std::vector<double> data)
        : subjects_(subjects), models_(models), data_(std::move(data)) {}

    std::size_t subjects_;
    std::size_t models_;
    std::vector<double> data_;
};

struct BmsResult {
    AlphaVector alpha_post;
    std::vector<double> expected_freq;  // alpha_j / alpha_s
    ExceedanceVector exceedance;
    int iterations = 0;
    bool converged = false;
};

/// All-ones prior concentration of length k.
AlphaVector uniform_prior(std::size_t k);

/// One variational fixed-point sweep: per-subject responsibilities
/// proportional to exp[lme_ij + psi(alpha_j)] (row-normalized after
/// subtracting the row maximum, which is exact), summed over subjects and
/// added to alpha0. The returned vector's sum is sum(alpha0) + N.
AlphaVector vb_step(const LogEvidenceMatrix& lme, const AlphaVector& alpha,
                    const AlphaVector& alpha0);

/// Iterates vb_step from alpha0 until max_j |delta alpha_j| < tol or max_iter
/// sweeps. Non-convergence is not an error: the best iterate is returned with
/// converged = false. Fills expected frequencies and the posterior EP vector.
BmsResult vb_estimate(const LogEvidenceMatrix& lme, const AlphaVector& alpha0,
                      double tol = 1e-6, int max_iter = 1000,
                      const quad::Config& ep_cfg = {});

/// As above with the default prior alpha0 = [1, ..., 1].
BmsResult vb_estimate(const LogEvidenceMatrix& lme);

/// EP vector of the family-level posterior: agglomerate alpha_post over the
/// partition, then compute its EPs.
ExceedanceVector family_ep(const BmsResult& result, const Partition& part);

}  // namespace direp
