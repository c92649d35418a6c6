#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "direp/rfx_bms.hpp"

namespace direp::cli {

// Input or contract problem attributable to the user; maps to exit code 2.
struct CliError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// "1.5,2,3" -> {1.5, 2.0, 3.0}; context names the flag or file location.
std::vector<double> parse_number_list(const std::string& text, const std::string& context);

// "1,3;2,4;5,6" with 1-based indices -> 0-based groups, validated against k.
// Duplicated or missing indices are reported 1-based, as the user typed them.
std::vector<std::vector<std::size_t>> parse_groups(const std::string& text, std::size_t k);

// One alpha vector per line; blank lines and lines starting with '#' skipped.
// Errors carry 1-based line numbers.
std::vector<std::vector<double>> read_alpha_rows(const std::string& path);

// CSV of log model evidences; a line "---" starts a new matrix.
std::vector<LogEvidenceMatrix> read_lme_matrices(const std::string& path);

std::string format_fixed(double v);       // 6 decimal places
std::string format_sci(double v);         // 6 significant digits, scientific
std::string join_fixed(const std::vector<double>& v);
std::string join_sci(const std::vector<double>& v);

// Writes to the path, or to stdout when the path is empty.
void write_output(const std::string& path, const std::string& content);

}  // namespace direp::cli
