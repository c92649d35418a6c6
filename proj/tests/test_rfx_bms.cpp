#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include "direp/rfx_bms.hpp"

using namespace direp;

namespace {

LogEvidenceMatrix random_lme(std::mt19937_64& rng, std::size_t n, std::size_t m) {
    std::uniform_real_distribution<double> entry(-1e4, 0.0);
    std::vector<std::vector<double>> rows(n, std::vector<double>(m));
    for (auto& row : rows) {
        for (auto& v : row) v = entry(rng);
    }
    return LogEvidenceMatrix::from_rows(rows);
}

}  // namespace

TEST_CASE("LogEvidenceMatrix validation") {
    CHECK_THROWS_AS(LogEvidenceMatrix::from_rows({}), std::invalid_argument);
    CHECK_THROWS_AS(LogEvidenceMatrix::from_rows({{1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(LogEvidenceMatrix::from_rows({{1.0, 2.0}, {1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(
        LogEvidenceMatrix::from_rows({{0.0, std::numeric_limits<double>::infinity()}}),
        std::invalid_argument);
    auto ok = LogEvidenceMatrix::from_rows({{-1.0, -2.0}, {-3.0, -4.0}});
    CHECK(ok.subjects() == 2);
    CHECK(ok.models() == 2);
    CHECK(ok(1, 0) == -3.0);
}

TEST_CASE("vb_step: uniform responsibilities under symmetry") {
    auto lme = LogEvidenceMatrix::from_rows(
        {{-2.0, -2.0, -2.0}, {-5.0, -5.0, -5.0}, {-1.0, -1.0, -1.0}, {-9.0, -9.0, -9.0}});
    auto prior = uniform_prior(3);
    auto next = vb_step(lme, prior, prior);
    for (std::size_t j = 0; j < 3; ++j) {
        // beta_j = N/M = 4/3
        CHECK(next[j] == doctest::Approx(1.0 + 4.0 / 3.0).epsilon(1e-14));
    }
}

TEST_CASE("vb_step: one dominant model") {
    auto lme = LogEvidenceMatrix::from_rows({{0.0, -100.0}});
    auto prior = uniform_prior(2);
    auto next = vb_step(lme, prior, prior);
    CHECK(std::fabs(next[0] - 2.0) < 1e-8);
    CHECK(std::fabs(next[1] - 1.0) < 1e-8);
}

TEST_CASE("vb_step: adding a constant to one row changes nothing") {
    auto base = LogEvidenceMatrix::from_rows({{-310.0, -305.5, -330.0}, {-42.0, -40.0, -47.5}});
    auto shifted =
        LogEvidenceMatrix::from_rows({{-310.0 + 500, -305.5 + 500, -330.0 + 500},
                                      {-42.0, -40.0, -47.5}});
    AlphaVector alpha({1.3, 2.1, 0.9});
    auto prior = uniform_prior(3);
    auto a = vb_step(base, alpha, prior);
    auto b = vb_step(shifted, alpha, prior);
    for (std::size_t j = 0; j < 3; ++j) {
        CHECK(std::fabs(a[j] - b[j]) <= 1e-10);
    }
}

TEST_CASE("vb_estimate: identical columns settle on the symmetric fixed point") {
    auto lme = LogEvidenceMatrix::from_rows({{-1.5, -1.5}, {-2.0, -2.0}, {-0.5, -0.5}});
    auto result = vb_estimate(lme);
    CHECK(result.converged);
    CHECK(std::fabs(result.alpha_post[0] - 2.5) <= 1e-8);
    CHECK(std::fabs(result.alpha_post[1] - 2.5) <= 1e-8);
    CHECK(result.exceedance.phi[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(result.expected_freq[0] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("vb_estimate: dominated two-model problem") {
    auto lme = LogEvidenceMatrix::from_rows({{0.0, -100.0}});
    auto result = vb_estimate(lme);
    CHECK(result.converged);
    CHECK(std::fabs(result.alpha_post[0] - 2.0) <= 1e-6);
    CHECK(std::fabs(result.alpha_post[1] - 1.0) <= 1e-6);
    CHECK(result.exceedance.phi[0] == doctest::Approx(0.75).epsilon(1e-8));
    CHECK(result.exceedance.phi[1] == doctest::Approx(0.25).epsilon(1e-8));
}

TEST_CASE("vb_estimate: mass conservation on random problems") {
    std::mt19937_64 rng(2718);
    std::uniform_int_distribution<std::size_t> nn(1, 50), mm(2, 6);
    for (int t = 0; t < 20; ++t) {
        const std::size_t n = nn(rng), m = mm(rng);
        auto lme = random_lme(rng, n, m);
        auto result = vb_estimate(lme);
        CHECK(std::fabs(result.alpha_post.sum() - (static_cast<double>(m) + n)) <= 1e-8);
    }
}

TEST_CASE("vb_estimate: per-row shift invariance end to end") {
    std::mt19937_64 rng(999);
    auto lme = random_lme(rng, 6, 4);
    std::vector<std::vector<double>> shifted(6, std::vector<double>(4));
    std::uniform_real_distribution<double> c(-3000.0, 3000.0);
    for (std::size_t i = 0; i < 6; ++i) {
        const double offset = c(rng);
        for (std::size_t j = 0; j < 4; ++j) shifted[i][j] = lme(i, j) + offset;
    }
    auto a = vb_estimate(lme);
    auto b = vb_estimate(LogEvidenceMatrix::from_rows(shifted));
    for (std::size_t j = 0; j < 4; ++j) {
        CHECK(std::fabs(a.alpha_post[j] - b.alpha_post[j]) <= 1e-8);
    }
}

TEST_CASE("vb_estimate: column permutation equivariance") {
    std::mt19937_64 rng(555);
    auto lme = random_lme(rng, 5, 3);
    std::vector<std::vector<double>> permuted(5, std::vector<double>(3));
    const std::size_t perm[3] = {2, 0, 1};
    for (std::size_t i = 0; i < 5; ++i) {
        for (std::size_t j = 0; j < 3; ++j) permuted[i][j] = lme(i, perm[j]);
    }
    auto a = vb_estimate(lme);
    auto b = vb_estimate(LogEvidenceMatrix::from_rows(permuted));
    for (std::size_t j = 0; j < 3; ++j) {
        CHECK(b.alpha_post[j] == doctest::Approx(a.alpha_post[perm[j]]).epsilon(1e-10));
    }
}

TEST_CASE("vb_estimate: converged point is a fixed point of vb_step") {
    std::mt19937_64 rng(31415);
    auto lme = random_lme(rng, 12, 4);
    const double tol = 1e-6;
    auto result = vb_estimate(lme, uniform_prior(4), tol);
    REQUIRE(result.converged);
    auto moved = vb_step(lme, result.alpha_post, uniform_prior(4));
    for (std::size_t j = 0; j < 4; ++j) {
        CHECK(std::fabs(moved[j] - result.alpha_post[j]) < tol);
    }
}

TEST_CASE("vb_estimate: a 50-log-unit dominant column takes all the mass") {
    std::mt19937_64 rng(161803);
    std::uniform_real_distribution<double> entry(-400.0, -300.0);
    const std::size_t n = 14, m = 5;
    std::vector<std::vector<double>> rows(n, std::vector<double>(m));
    for (auto& row : rows) {
        for (auto& v : row) v = entry(rng);
        row[2] = -250.0;  // >= 50 above every other entry in the row
    }
    auto result = vb_estimate(LogEvidenceMatrix::from_rows(rows));
    CHECK(result.alpha_post[2] >= 1.0 + static_cast<double>(n) - 1e-6);
}

TEST_CASE("vb_estimate: hitting max_iter reports non-convergence but returns the iterate") {
    std::mt19937_64 rng(8);
    auto lme = random_lme(rng, 10, 3);
    auto result = vb_estimate(lme, uniform_prior(3), 1e-12, 1);
    CHECK_FALSE(result.converged);
    CHECK(result.iterations == 1);
    CHECK(result.alpha_post.sum() == doctest::Approx(3.0 + 10.0).epsilon(1e-12));
    CHECK_THROWS_AS(vb_estimate(lme, uniform_prior(3), -1.0, 10), std::invalid_argument);
    CHECK_THROWS_AS(vb_estimate(lme, uniform_prior(3), 1e-6, 0), std::invalid_argument);
}

TEST_CASE("family_ep") {
    auto lme = LogEvidenceMatrix::from_rows({{-1.0, -1.0, -1.0}, {-2.0, -2.0, -2.0}});
    auto result = vb_estimate(lme);

    auto same = family_ep(result, Partition::trivial(3));
    for (std::size_t j = 0; j < 3; ++j) {
        CHECK(std::fabs(same.phi[j] - result.exceedance.phi[j]) <= 1e-8);
    }

    auto lopsided = family_ep(result, Partition({{0}, {1, 2}}, 3));
    CHECK(std::fabs(lopsided.sum_deviation()) <= 1e-6);

    auto fixture = BmsResult{AlphaVector({452, 462, 92}),
                             {},
                             ep_auto(AlphaVector({452, 462, 92})),
                             1,
                             true};
    auto eps = family_ep(fixture, Partition::trivial(3));
    CHECK(std::fabs(eps.phi[0] - 0.3704) <= 5e-4);
    CHECK(std::fabs(eps.phi[1] - 0.6296) <= 5e-4);
    CHECK(eps.phi[2] <= 5e-4);
}

TEST_CASE("family_ep: two equal families split evenly") {
    // Four identical models grouped in twos: family alphas are equal.
    auto lme = LogEvidenceMatrix::from_rows({{-3.0, -3.0, -3.0, -3.0}});
    auto result = vb_estimate(lme);
    auto fam = family_ep(result, Partition({{0, 1}, {2, 3}}, 4));
    CHECK(fam.phi[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(fam.phi[1] == doctest::Approx(0.5).epsilon(1e-12));
}
