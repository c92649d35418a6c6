#include "io.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace direp::cli {

namespace {

std::string trim(const std::string& s) {
    const auto from = s.find_first_not_of(" \t\r\n");
    if (from == std::string::npos) return "";
    const auto to = s.find_last_not_of(" \t\r\n");
    return s.substr(from, to - from + 1);
}

double parse_double(const std::string& token, const std::string& context) {
    try {
        std::size_t used = 0;
        const double v = std::stod(token, &used);
        if (used != token.size()) {
            throw CliError(context + ": malformed number '" + token + "'");
        }
        return v;
    } catch (const CliError&) {
        throw;
    } catch (const std::exception&) {
        throw CliError(context + ": malformed number '" + token + "'");
    }
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string token;
    std::istringstream in(text);
    while (std::getline(in, token, sep)) {
        out.push_back(trim(token));
    }
    if (!text.empty() && text.back() == sep) out.push_back("");
    return out;
}

}  // namespace

std::vector<double> parse_number_list(const std::string& text, const std::string& context) {
    if (trim(text).empty()) {
        throw CliError(context + ": empty value list");
    }
    std::vector<double> out;
    for (const auto& token : split(text, ',')) {
        out.push_back(parse_double(token, context));
    }
    return out;
}

std::vector<std::vector<std::size_t>> parse_groups(const std::string& text, std::size_t k) {
    std::vector<std::vector<std::size_t>> groups;
    std::vector<bool> seen(k, false);
    for (const auto& group_text : split(text, ';')) {
        if (group_text.empty()) {
            throw CliError("--groups: empty group");
        }
        std::vector<std::size_t> group;
        for (const auto& token : split(group_text, ',')) {
            const double v = parse_double(token, "--groups");
            const auto idx = static_cast<long long>(v);
            if (static_cast<double>(idx) != v || idx < 1 ||
                idx > static_cast<long long>(k)) {
                throw CliError("--groups: index '" + token + "' is not in 1.." +
                               std::to_string(k));
            }
            if (seen[static_cast<std::size_t>(idx - 1)]) {
                throw CliError("--groups: index " + std::to_string(idx) +
                               " appears in more than one group");
            }
            seen[static_cast<std::size_t>(idx - 1)] = true;
            group.push_back(static_cast<std::size_t>(idx - 1));
        }
        groups.push_back(std::move(group));
    }
    for (std::size_t j = 0; j < k; ++j) {
        if (!seen[j]) {
            throw CliError("--groups: index " + std::to_string(j + 1) +
                           " is missing from the partition");
        }
    }
    return groups;
}

std::vector<std::vector<double>> read_alpha_rows(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw CliError("cannot open input file '" + path + "'");
    }
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string body = trim(line);
        if (body.empty() || body.front() == '#') continue;
        const std::string context = path + ":" + std::to_string(lineno);
        auto values = parse_number_list(body, context);
        for (std::size_t j = 0; j < values.size(); ++j) {
            if (!(values[j] > 0.0)) {
                throw CliError(context + ": alpha component " + std::to_string(j + 1) +
                               " must be strictly positive");
            }
        }
        rows.push_back(std::move(values));
    }
    if (rows.empty()) {
        throw CliError(path + ": no alpha vectors found");
    }
    return rows;
}

std::vector<LogEvidenceMatrix> read_lme_matrices(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw CliError("cannot open LME file '" + path + "'");
    }
    std::vector<LogEvidenceMatrix> matrices;
    std::vector<std::vector<double>> rows;
    std::size_t first_row_line = 0;
    std::string line;
    std::size_t lineno = 0;

    auto flush = [&] {
        if (rows.empty()) return;
        for (std::size_t i = 1; i < rows.size(); ++i) {
            if (rows[i].size() != rows.front().size()) {
                throw CliError(path + ": row " + std::to_string(i + 1) + " of the matrix at line " +
                               std::to_string(first_row_line) + " has " +
                               std::to_string(rows[i].size()) + " entries, expected " +
                               std::to_string(rows.front().size()));
            }
        }
        try {
            matrices.push_back(LogEvidenceMatrix::from_rows(rows));
        } catch (const std::invalid_argument& e) {
            throw CliError(path + ": " + e.what());
        }
        rows.clear();
    };

    while (std::getline(in, line)) {
        ++lineno;
        const std::string body = trim(line);
        if (body.empty() || body.front() == '#') continue;
        if (body == "---") {
            flush();
            continue;
        }
        if (rows.empty()) first_row_line = lineno;
        rows.push_back(parse_number_list(body, path + ":" + std::to_string(lineno)));
    }
    flush();
    if (matrices.empty()) {
        throw CliError(path + ": no log-evidence matrices found");
    }
    return matrices;
}

std::string format_fixed(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

std::string format_sci(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6e", v);
    return buf;
}

std::string join_fixed(const std::vector<double>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        out += format_fixed(v[i]);
    }
    return out;
}

std::string join_sci(const std::vector<double>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        out += format_sci(v[i]);
    }
    return out;
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw CliError("cannot open output file '" + path + "'");
    }
    out << content;
}

}  // namespace direp::cli
