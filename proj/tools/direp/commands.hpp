#pragma once

#include <cstdint>
#include <string>

#include "direp/quadrature.hpp"

namespace direp::cli {

struct CommonOptions {
    std::string format = "csv";  // csv | json
    std::string output;          // empty = stdout
    double abs_tol = 1e-10;
    double rel_tol = 1e-8;

    quad::Config quad_config() const { return quad::Config{abs_tol, rel_tol, 2000}; }
};

struct EpOptions {
    CommonOptions common;
    std::string alpha_text;
    std::string input_path;
    std::string method = "auto";  // auto | integration | sampling
    std::uint64_t samples = 1'000'000;
    std::uint64_t seed = 0;
    bool seed_set = false;
};

struct AgglomOptions {
    CommonOptions common;
    std::string alpha_text;
    std::string groups_text;
};

struct PollOptions {
    CommonOptions common;
    std::string percent_text;
    double respondents = 0.0;
    std::string prior_text;
    bool round = false;
};

struct BmsOptions {
    CommonOptions common;
    std::string lme_path;
    double tol = 1e-6;
    int max_iter = 1000;
    std::string families_text;
};

struct BenchOptions {
    CommonOptions common;
    int k = 0;
    int batch = 0;
    std::uint64_t samples = 100'000;
    std::uint64_t seed = 1;
};

int cmd_ep(const EpOptions& opt);
int cmd_agglom(const AgglomOptions& opt);
int cmd_poll(const PollOptions& opt);
int cmd_bms(const BmsOptions& opt);
int cmd_bench(const BenchOptions& opt);

}  // namespace direp::cli
