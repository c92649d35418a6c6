#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "direp/dirichlet.hpp"
#include "direp/rfx_bms.hpp"
#include "direp/special_functions.hpp"

namespace {

using namespace direp;

AlphaVector synthetic_alpha(std::size_t k, std::uint64_t seed) {
    RngState rng(derive_seed(seed, 0));
    std::vector<double> v(k);
    for (auto& x : v) x = 1.0 + 5.0 * sample_gamma(2.0, rng);
    return AlphaVector(std::move(v));
}

void BM_RegLowerIncGamma(benchmark::State& state) {
    const double a = static_cast<double>(state.range(0));
    double x = 0.5 * a;
    for (auto _ : state) {
        benchmark::DoNotOptimize(sf::reg_lower_inc_gamma(a, x));
        x = (x < 2.0 * a) ? x + 0.37 : 0.5 * a;
    }
}
BENCHMARK(BM_RegLowerIncGamma)->Arg(3)->Arg(92)->Arg(534);

void BM_RegIncBeta(benchmark::State& state) {
    const double a = static_cast<double>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(sf::reg_inc_beta(0.5, a, 1.3 * a));
    }
}
BENCHMARK(BM_RegIncBeta)->Arg(2)->Arg(100)->Arg(500);

void BM_Digamma(benchmark::State& state) {
    double x = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(sf::digamma(x));
        x = (x < 100.0) ? x + 0.173 : 0.1;
    }
}
BENCHMARK(BM_Digamma);

void BM_EpIntegration(benchmark::State& state) {
    const auto alpha = synthetic_alpha(static_cast<std::size_t>(state.range(0)), 7);
    for (auto _ : state) {
        benchmark::DoNotOptimize(ep_integration(alpha));
    }
}
BENCHMARK(BM_EpIntegration)->Arg(3)->Arg(6)->Arg(9);

void BM_EpSampling(benchmark::State& state) {
    const auto alpha = synthetic_alpha(static_cast<std::size_t>(state.range(0)), 7);
    std::uint64_t round = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(ep_sampling(alpha, SamplingConfig{10000, round++}));
    }
}
BENCHMARK(BM_EpSampling)->Arg(3)->Arg(6)->Arg(9);

void BM_VbEstimate(benchmark::State& state) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> entry(-500.0, 0.0);
    std::vector<std::vector<double>> rows(22, std::vector<double>(state.range(0)));
    for (auto& row : rows) {
        for (auto& v : row) v = entry(rng);
    }
    const auto lme = LogEvidenceMatrix::from_rows(rows);
    for (auto _ : state) {
        benchmark::DoNotOptimize(vb_estimate(lme));
    }
}
BENCHMARK(BM_VbEstimate)->Arg(3)->Arg(9);

}  // namespace

BENCHMARK_MAIN();
