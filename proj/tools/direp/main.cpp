#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "direp/errors.hpp"
#include "io.hpp"

namespace cli = direp::cli;

namespace {

void add_common(CLI::App* cmd, cli::CommonOptions& common) {
    cmd->add_option("--format", common.format, "Output format: csv or json")
        ->default_val("csv");
    cmd->add_option("--output", common.output, "Write output to this path instead of stdout");
    cmd->add_option("--abs-tol", common.abs_tol, "Quadrature absolute tolerance")
        ->default_val(1e-10);
    cmd->add_option("--rel-tol", common.rel_tol, "Quadrature relative tolerance")
        ->default_val(1e-8);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dirichlet exceedance probabilities: closed form, numerical integration, "
                 "Monte-Carlo sampling, and random-effects Bayesian model selection"};
    app.require_subcommand(1);

    cli::EpOptions ep;
    auto* ep_cmd = app.add_subcommand("ep", "Exceedance probabilities for one or many alpha vectors");
    ep_cmd->add_option("--alpha", ep.alpha_text, "Comma-separated concentration parameters");
    ep_cmd->add_option("--input", ep.input_path,
                       "CSV file with one alpha vector per line ('#' lines are comments)");
    ep_cmd->add_option("--method", ep.method, "auto | integration | sampling")
        ->default_val("auto");
    ep_cmd->add_option("--samples", ep.samples, "Monte-Carlo sample count")
        ->default_val(1000000);
    auto* seed_opt = ep_cmd->add_option("--seed", ep.seed, "Master seed (required for sampling)");
    add_common(ep_cmd, ep.common);

    cli::AgglomOptions agglom;
    auto* agglom_cmd =
        app.add_subcommand("agglom", "Agglomerate alpha over index groups and report the EPs");
    agglom_cmd->add_option("--alpha", agglom.alpha_text, "Comma-separated concentration parameters");
    agglom_cmd->add_option("--groups", agglom.groups_text,
                           "Semicolon-separated groups of comma-separated 1-based indices, "
                           "e.g. \"1,3;2,4;5,6\"");
    add_common(agglom_cmd, agglom.common);

    cli::PollOptions poll;
    auto* poll_cmd = app.add_subcommand(
        "poll", "Posterior concentration from poll percentages and its EPs");
    poll_cmd->add_option("--percent", poll.percent_text, "Reported percentages, comma-separated");
    poll_cmd->add_option("--n", poll.respondents, "Number of respondents");
    poll_cmd->add_option("--prior", poll.prior_text, "Prior concentration (default: all ones)");
    poll_cmd->add_flag("--round", poll.round, "Round posterior components to nearest integer");
    add_common(poll_cmd, poll.common);

    cli::BmsOptions bms;
    auto* bms_cmd = app.add_subcommand(
        "bms", "Random-effects Bayesian model selection from a log-evidence CSV");
    bms_cmd->add_option("--lme", bms.lme_path,
                        "CSV of log model evidences, N rows x M columns; '---' lines separate "
                        "multiple matrices");
    bms_cmd->add_option("--tol", bms.tol, "Convergence tolerance on max |delta alpha|")
        ->default_val(1e-6);
    bms_cmd->add_option("--max-iter", bms.max_iter, "Sweep budget")->default_val(1000);
    bms_cmd->add_option("--families", bms.families_text,
                        "Model families in --groups syntax; adds family-level EPs");
    add_common(bms_cmd, bms.common);

    cli::BenchOptions bench;
    auto* bench_cmd = app.add_subcommand(
        "bench", "Compare integration against sampling on a reproducible synthetic batch");
    bench_cmd->add_option("--k", bench.k, "Number of categories (>= 3)");
    bench_cmd->add_option("--batch", bench.batch, "Number of alpha vectors");
    bench_cmd->add_option("--samples", bench.samples, "Monte-Carlo sample count per vector")
        ->default_val(100000);
    bench_cmd->add_option("--seed", bench.seed, "Master seed for alphas and sampling")
        ->default_val(1);
    add_common(bench_cmd, bench.common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    ep.seed_set = seed_opt->count() > 0;

    try {
        if (ep_cmd->parsed()) return cli::cmd_ep(ep);
        if (agglom_cmd->parsed()) return cli::cmd_agglom(agglom);
        if (poll_cmd->parsed()) return cli::cmd_poll(poll);
        if (bms_cmd->parsed()) return cli::cmd_bms(bms);
        if (bench_cmd->parsed()) return cli::cmd_bench(bench);
    } catch (const direp::ConvergenceError& e) {
        std::cerr << "direp: " << e.what() << "\n";
        return 3;
    } catch (const cli::CliError& e) {
        std::cerr << "direp: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "direp: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
