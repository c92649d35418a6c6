#include "commands.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <iostream>
#include <mutex>
#include <numeric>
#include <optional>
#include <thread>
#include <vector>

#include <json.hpp>

#include "direp/dirichlet.hpp"
#include "direp/errors.hpp"
#include "direp/rfx_bms.hpp"
#include "io.hpp"

namespace direp::cli {

namespace {

using json = nlohmann::ordered_json;

// Runs fn(0..n-1) on a small pool; rows are independent and results land in
// index-addressed slots, so output order never depends on scheduling.
template <typename Fn>
void for_each_row(std::size_t n, Fn&& fn) {
    const std::size_t workers =
        std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::mutex error_mutex;
    std::exception_ptr first_error;
    auto drain = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n || failed.load()) return;
            try {
                fn(i);
            } catch (...) {
                std::scoped_lock lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                failed.store(true);
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(drain);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

AlphaVector make_alpha(std::vector<double> values, const std::string& context) {
    for (std::size_t j = 0; j < values.size(); ++j) {
        if (!(values[j] > 0.0)) {
            throw CliError(context + ": component " + std::to_string(j + 1) +
                           " must be strictly positive");
        }
    }
    try {
        return AlphaVector(std::move(values));
    } catch (const std::invalid_argument& e) {
        throw CliError(context + ": " + e.what());
    }
}

json ep_to_json(const ExceedanceVector& ep) {
    return json{{"phi", ep.phi},
                {"method", to_string(ep.method)},
                {"sum_deviation", ep.sum_deviation()},
                {"diagnostics", ep.diagnostics}};
}

std::string ep_row_csv(std::size_t index, const ExceedanceVector& ep) {
    std::string line = std::to_string(index);
    line += ',';
    line += to_string(ep.method);
    line += ',';
    line += std::to_string(ep.phi.size());
    line += ',';
    line += join_fixed(ep.phi);
    line += ',';
    line += format_sci(ep.sum_deviation());
    line += ',';
    line += join_sci(ep.diagnostics);
    line += '\n';
    return line;
}

// Shared emitter for the commands that report one alpha vector and its EPs.
void emit_alpha_ep(const CommonOptions& common, const AlphaVector& alpha,
                   const ExceedanceVector& ep) {
    if (common.format == "json") {
        json doc{{"alpha", alpha.values()}};
        doc.update(ep_to_json(ep));
        write_output(common.output, doc.dump(2) + "\n");
        return;
    }
    std::string text;
    text += "alpha," + join_fixed(alpha.values()) + "\n";
    text += "phi," + join_fixed(ep.phi) + "\n";
    text += "method," + std::string(to_string(ep.method)) + "\n";
    text += "sum_deviation," + format_sci(ep.sum_deviation()) + "\n";
    text += "diagnostics," + join_sci(ep.diagnostics) + "\n";
    write_output(common.output, text);
}

void check_format(const CommonOptions& common) {
    if (common.format != "csv" && common.format != "json") {
        throw CliError("--format must be 'csv' or 'json'");
    }
}

}  // namespace

int cmd_ep(const EpOptions& opt) {
    check_format(opt.common);
    if (opt.alpha_text.empty() == opt.input_path.empty()) {
        throw CliError("ep: exactly one of --alpha or --input must be given");
    }
    if (opt.method != "auto" && opt.method != "integration" && opt.method != "sampling") {
        throw CliError("--method must be auto, integration or sampling");
    }
    if (opt.method == "sampling" && !opt.seed_set) {
        throw CliError("--method sampling requires --seed");
    }
    if (opt.samples < 1) {
        throw CliError("--samples must be at least 1");
    }

    const bool batch = !opt.input_path.empty();
    std::vector<AlphaVector> rows;
    if (batch) {
        for (auto& values : read_alpha_rows(opt.input_path)) {
            rows.push_back(AlphaVector(std::move(values)));
        }
    } else {
        rows.push_back(make_alpha(parse_number_list(opt.alpha_text, "--alpha"), "--alpha"));
    }

    const quad::Config qcfg = opt.common.quad_config();
    std::vector<ExceedanceVector> results(rows.size());
    for_each_row(rows.size(), [&](std::size_t i) {
        try {
            if (opt.method == "sampling") {
                results[i] = ep_sampling(rows[i], SamplingConfig{opt.samples,
                                                                 derive_seed(opt.seed, i)});
            } else if (opt.method == "integration") {
                results[i] = ep_integration(rows[i], qcfg);
            } else {
                results[i] = ep_auto(rows[i], qcfg);
            }
        } catch (const ConvergenceError& e) {
            throw ConvergenceError("row " + std::to_string(i + 1) + ": " + e.what(),
                                   e.best_value(), e.error_estimate());
        }
    });

    if (opt.common.format == "json") {
        if (batch) {
            json doc;
            doc["rows"] = json::array();
            for (const auto& ep : results) doc["rows"].push_back(ep_to_json(ep));
            write_output(opt.common.output, doc.dump(2) + "\n");
        } else {
            write_output(opt.common.output, ep_to_json(results.front()).dump(2) + "\n");
        }
        return 0;
    }
    std::string text = "# row,method,k,phi[1..k],sum_deviation,diag[1..k]\n";
    for (std::size_t i = 0; i < results.size(); ++i) {
        text += ep_row_csv(i, results[i]);
    }
    write_output(opt.common.output, text);
    return 0;
}

int cmd_agglom(const AgglomOptions& opt) {
    check_format(opt.common);
    if (opt.alpha_text.empty() || opt.groups_text.empty()) {
        throw CliError("agglom: both --alpha and --groups are required");
    }
    AlphaVector alpha = make_alpha(parse_number_list(opt.alpha_text, "--alpha"), "--alpha");
    Partition part(parse_groups(opt.groups_text, alpha.size()), alpha.size());
    AlphaVector grouped = agglomerate(alpha, part);
    ExceedanceVector ep = ep_auto(grouped, opt.common.quad_config());
    emit_alpha_ep(opt.common, grouped, ep);
    return 0;
}

int cmd_poll(const PollOptions& opt) {
    check_format(opt.common);
    if (opt.percent_text.empty()) {
        throw CliError("poll: --percent is required");
    }
    if (!(opt.respondents >= 0.0)) {
        throw CliError("poll: --n must be nonnegative");
    }
    const std::vector<double> percent = parse_number_list(opt.percent_text, "--percent");
    for (std::size_t j = 0; j < percent.size(); ++j) {
        if (!(percent[j] >= 0.0)) {
            throw CliError("--percent: entry " + std::to_string(j + 1) + " is negative");
        }
    }
    const double total = std::accumulate(percent.begin(), percent.end(), 0.0);
    if (std::fabs(total - 100.0) > 0.5) {
        std::cerr << "direp poll: warning: percentages sum to " << total << ", not 100\n";
    }

    AlphaVector prior = opt.prior_text.empty()
                            ? AlphaVector(std::vector<double>(percent.size(), 1.0))
                            : make_alpha(parse_number_list(opt.prior_text, "--prior"), "--prior");
    if (prior.size() != percent.size()) {
        throw CliError("poll: --prior has " + std::to_string(prior.size()) +
                       " components, --percent has " + std::to_string(percent.size()));
    }

    std::vector<double> counts(percent.size());
    for (std::size_t j = 0; j < percent.size(); ++j) {
        counts[j] = percent[j] / 100.0 * opt.respondents;
    }
    AlphaVector posterior = posterior_from_counts(prior, counts, opt.round);
    ExceedanceVector ep = ep_auto(posterior, opt.common.quad_config());
    emit_alpha_ep(opt.common, posterior, ep);
    return 0;
}

int cmd_bms(const BmsOptions& opt) {
    check_format(opt.common);
    if (opt.lme_path.empty()) {
        throw CliError("bms: --lme is required");
    }
    if (!(opt.tol > 0.0)) {
        throw CliError("bms: --tol must be positive");
    }
    if (opt.max_iter < 1) {
        throw CliError("bms: --max-iter must be positive");
    }
    const auto matrices = read_lme_matrices(opt.lme_path);
    const quad::Config qcfg = opt.common.quad_config();

    std::vector<BmsResult> results;
    results.reserve(matrices.size());
    std::vector<std::optional<Partition>> families(matrices.size());
    for (std::size_t i = 0; i < matrices.size(); ++i) {
        results.push_back(BmsResult{AlphaVector({1.0}), {}, {}, 0, false});
        if (!opt.families_text.empty()) {
            families[i] = Partition(parse_groups(opt.families_text, matrices[i].models()),
                                    matrices[i].models());
        }
    }

    for_each_row(matrices.size(), [&](std::size_t i) {
        results[i] = vb_estimate(matrices[i], uniform_prior(matrices[i].models()), opt.tol,
                                 opt.max_iter, qcfg);
    });

    if (opt.common.format == "json") {
        json doc;
        doc["matrices"] = json::array();
        for (std::size_t i = 0; i < results.size(); ++i) {
            const BmsResult& r = results[i];
            json entry{{"alpha_post", r.alpha_post.values()},
                       {"expected_freq", r.expected_freq},
                       {"ep", r.exceedance.phi},
                       {"ep_diagnostics", r.exceedance.diagnostics},
                       {"ep_sum_deviation", r.exceedance.sum_deviation()},
                       {"iterations", r.iterations},
                       {"converged", r.converged}};
            if (families[i]) {
                AlphaVector fam_alpha = agglomerate(r.alpha_post, *families[i]);
                ExceedanceVector fam_ep = ep_auto(fam_alpha, qcfg);
                entry["family_alpha"] = fam_alpha.values();
                entry["family_ep"] = fam_ep.phi;
            }
            doc["matrices"].push_back(std::move(entry));
        }
        write_output(opt.common.output, doc.dump(2) + "\n");
        return 0;
    }

    std::string text = "# matrix,field,values...\n";
    for (std::size_t i = 0; i < results.size(); ++i) {
        const BmsResult& r = results[i];
        const std::string m = std::to_string(i);
        text += m + ",alpha," + join_fixed(r.alpha_post.values()) + "\n";
        text += m + ",freq," + join_fixed(r.expected_freq) + "\n";
        text += m + ",ep," + join_fixed(r.exceedance.phi) + "\n";
        text += m + ",ep_diag," + join_sci(r.exceedance.diagnostics) + "\n";
        if (families[i]) {
            AlphaVector fam_alpha = agglomerate(r.alpha_post, *families[i]);
            ExceedanceVector fam_ep = ep_auto(fam_alpha, qcfg);
            text += m + ",family_alpha," + join_fixed(fam_alpha.values()) + "\n";
            text += m + ",family_ep," + join_fixed(fam_ep.phi) + "\n";
        }
        text += m + ",iterations," + std::to_string(r.iterations) + "\n";
        text += m + ",converged," + (r.converged ? std::string("1") : std::string("0")) + "\n";
    }
    write_output(opt.common.output, text);
    return 0;
}

int cmd_bench(const BenchOptions& opt) {
    check_format(opt.common);
    if (opt.k == 2) {
        throw CliError("bench: k=2 has a closed form; benchmarking it is meaningless");
    }
    if (opt.k < 3) {
        throw CliError("bench: --k must be at least 3");
    }
    if (opt.batch < 1) {
        throw CliError("bench: --batch must be at least 1");
    }
    if (opt.samples < 1) {
        throw CliError("bench: --samples must be at least 1");
    }

    const auto n = static_cast<std::size_t>(opt.batch);
    const auto k = static_cast<std::size_t>(opt.k);

    // Synthetic posteriors: alpha = 1 + Gamma(2,1)-distributed pseudo-count
    // mass (scale 5), the shape a VB posterior alpha0 + beta takes.
    std::vector<AlphaVector> rows;
    rows.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        RngState rng(derive_seed(opt.seed, 2 * i));
        std::vector<double> v(k);
        for (auto& x : v) x = 1.0 + 5.0 * sample_gamma(2.0, rng);
        rows.push_back(AlphaVector(std::move(v)));
    }

    const quad::Config qcfg = opt.common.quad_config();
    std::vector<ExceedanceVector> by_integration(n), by_sampling(n);

    using clock = std::chrono::steady_clock;
    const auto t0 = clock::now();
    for_each_row(n, [&](std::size_t i) { by_integration[i] = ep_integration(rows[i], qcfg); });
    const auto t1 = clock::now();
    for_each_row(n, [&](std::size_t i) {
        by_sampling[i] =
            ep_sampling(rows[i], SamplingConfig{opt.samples, derive_seed(opt.seed, 2 * i + 1)});
    });
    const auto t2 = clock::now();

    const double integration_seconds = std::chrono::duration<double>(t1 - t0).count();
    const double sampling_seconds = std::chrono::duration<double>(t2 - t1).count();
    const double ratio = sampling_seconds / integration_seconds;
    double discrepancy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            discrepancy =
                std::max(discrepancy, std::fabs(by_integration[i].phi[j] - by_sampling[i].phi[j]));
        }
    }

    if (opt.common.format == "json") {
        json doc{{"k", opt.k},
                 {"batch", opt.batch},
                 {"samples", opt.samples},
                 {"seed", opt.seed},
                 {"integration_seconds", integration_seconds},
                 {"sampling_seconds", sampling_seconds},
                 {"ratio", ratio},
                 {"max_abs_discrepancy", discrepancy}};
        write_output(opt.common.output, doc.dump(2) + "\n");
        return 0;
    }
    std::string text =
        "# k,batch,samples,seed,integration_seconds,sampling_seconds,ratio,max_abs_discrepancy\n";
    text += std::to_string(opt.k) + "," + std::to_string(opt.batch) + "," +
            std::to_string(opt.samples) + "," + std::to_string(opt.seed) + "," +
            format_fixed(integration_seconds) + "," + format_fixed(sampling_seconds) + "," +
            format_fixed(ratio) + "," + format_sci(discrepancy) + "\n";
    write_output(opt.common.output, text);
    return 0;
}

}  // namespace direp::cli
