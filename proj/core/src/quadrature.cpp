#include "direp/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

#include "direp/errors.hpp"

namespace direp::quad {

namespace {

// 15-point Kronrod abscissae/weights and the embedded 7-point Gauss weights
// (QUADPACK dqk15 constants). xgk[1], xgk[3], xgk[5] and the centre are the
// Gauss nodes.
constexpr double kXgk[8] = {
    0.9914553711208126392069, 0.9491079123427585245262, 0.8648644233597690727897,
    0.7415311855993944398639, 0.5860872354676911302941, 0.4058451513773971669066,
    0.2077849550078984676007, 0.0};
constexpr double kWgk[8] = {
    0.0229353220105292249637, 0.0630920926299785532907, 0.1047900103222501838399,
    0.1406532597155259187452, 0.1690047266392679028266, 0.1903505780647854099133,
    0.2044329400752988924142, 0.2094821410847278280130};
constexpr double kWg[4] = {
    0.1294849661688696932706, 0.2797053914892766679015, 0.3818300505051189449504,
    0.4179591836734693877551};

struct Panel {
    double lo, hi;
    double value;
    double error;
};

struct PanelWorse {
    bool operator()(const Panel& a, const Panel& b) const { return a.error < b.error; }
};

double safe_eval(const Integrand& f, double x) {
    const double v = f(x);
    return std::isfinite(v) ? v : 0.0;
}

Panel evaluate_panel(const Integrand& f, double lo, double hi) {
    const double centre = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    const double fc = safe_eval(f, centre);
    double kronrod = kWgk[7] * fc;
    double gauss = kWg[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double offset = half * kXgk[i];
        const double pair = safe_eval(f, centre - offset) + safe_eval(f, centre + offset);
        kronrod += kWgk[i] * pair;
        if (i % 2 == 1) {
            gauss += kWg[i / 2] * pair;
        }
    }
    kronrod *= half;
    gauss *= half;
    return Panel{lo, hi, kronrod, std::fabs(kronrod - gauss)};
}

void check_config(const Config& cfg) {
    if (!(cfg.abs_tol >= 0.0) || !(cfg.rel_tol >= 0.0) ||
        (cfg.abs_tol == 0.0 && cfg.rel_tol == 0.0)) {
        throw std::invalid_argument(
            "quadrature: at least one of abs_tol, rel_tol must be strictly positive");
    }
    if (cfg.max_subdivisions < 1) {
        throw std::invalid_argument("quadrature: max_subdivisions must be positive");
    }
}

Result adaptive(const Integrand& f, const std::vector<std::pair<double, double>>& seed_panels,
                const Config& cfg) {
    std::priority_queue<Panel, std::vector<Panel>, PanelWorse> active;
    double total_value = 0.0;
    double total_error = 0.0;

    for (const auto& [lo, hi] : seed_panels) {
        Panel p = evaluate_panel(f, lo, hi);
        total_value += p.value;
        total_error += p.error;
        active.push(p);
    }

    // A few mandatory bisections guard against a deceptively smooth first
    // pass over an integrand whose mass is concentrated between nodes.
    const int min_subdivisions = std::min(8, cfg.max_subdivisions);
    int subdivisions = 0;

    auto tolerance = [&] { return std::max(cfg.abs_tol, cfg.rel_tol * std::fabs(total_value)); };

    while (!active.empty()) {
        if (total_error <= tolerance() && subdivisions >= min_subdivisions) break;
        if (subdivisions >= cfg.max_subdivisions) {
            if (total_error <= tolerance()) break;
            throw ConvergenceError(
                "quadrature: subdivision budget (" + std::to_string(cfg.max_subdivisions) +
                    ") exhausted",
                total_value, total_error);
        }
        Panel worst = active.top();
        active.pop();
        const double mid = 0.5 * (worst.lo + worst.hi);
        if (!(mid > worst.lo && mid < worst.hi)) {
            // Too narrow to bisect; its contribution stays in the totals.
            continue;
        }
        Panel left = evaluate_panel(f, worst.lo, mid);
        Panel right = evaluate_panel(f, mid, worst.hi);
        total_value += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        active.push(left);
        active.push(right);
        ++subdivisions;
    }

    if (active.empty() && total_error > tolerance()) {
        throw ConvergenceError("quadrature: interval resolution exhausted", total_value,
                               total_error);
    }
    return Result{total_value, total_error};
}

}  // namespace

Result integrate(const Integrand& f, double lo, double hi, const Config& cfg) {
    check_config(cfg);
    if (!(std::isfinite(lo) && std::isfinite(hi)) || !(lo < hi)) {
        throw std::invalid_argument("integrate: require finite lo < hi");
    }
    return adaptive(f, {{lo, hi}}, cfg);
}

Result integrate_semi_infinite(const Integrand& f, double lo, const Config& cfg) {
    check_config(cfg);
    if (!(lo >= 0.0) || !std::isfinite(lo)) {
        throw std::invalid_argument("integrate_semi_infinite: require finite lo >= 0");
    }
    // x = lo + t/(1-t) maps (lo, inf) onto t in (0, 1).
    Integrand g = [&f, lo](double t) {
        const double u = 1.0 - t;
        const double w = 1.0 / (u * u);
        return f(lo + t / u) * w;
    };
    // Seed panels dyadic towards t = 1 (x - lo from 1 up to ~2^40), so a
    // distant concentrated mass lands inside a panel of comparable scale
    // instead of slipping between the nodes of one coarse panel.
    std::vector<std::pair<double, double>> seed;
    double t_prev = 0.0;
    double width = 0.5;
    for (int m = 0; m < 40; ++m) {
        const double t_next = 1.0 - width;
        seed.emplace_back(t_prev, t_next);
        t_prev = t_next;
        width *= 0.5;
    }
    seed.emplace_back(t_prev, 1.0);
    return adaptive(g, seed, cfg);
}

}  // namespace direp::quad
