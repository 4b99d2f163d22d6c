/**
 * Copyright 2026, quncert developers.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE file in the root directory of this source tree.
 */

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "quncert/campaign.hpp"

namespace {

using quncert::campaign::CampaignConfig;
using quncert::campaign::Format;
using quncert::campaign::Suite;

Suite parse_suite(const std::string& name) {
    if (name == "sum") return Suite::kSum;
    if (name == "collective") return Suite::kCollective;
    if (name == "metrology") return Suite::kMetrology;
    if (name == "speed") return Suite::kSpeed;
    if (name == "all") return Suite::kAll;
    throw CLI::ValidationError("suite", "expected one of sum|collective|metrology|speed|all");
}

quncert::campaign::IntRange parse_range(const std::string& text) {
    const auto sep = text.find("..");
    if (sep == std::string::npos) {
        throw CLI::ValidationError("range", "expected LO..HI, got '" + text + "'");
    }
    try {
        return {std::stoi(text.substr(0, sep)), std::stoi(text.substr(sep + 2))};
    } catch (const std::exception&) {
        throw CLI::ValidationError("range", "expected LO..HI with integers, got '" + text + "'");
    }
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open output path '" + path + "'");
    }
    out << content;
    if (!out) {
        throw std::runtime_error("write failed for output path '" + path + "'");
    }
}

struct CliOptions {
    std::string suite = "all";
    CampaignConfig config;
    std::string n_range_text;
    std::string m_range_text;
    std::string format_text = "json";
};

void add_common_flags(CLI::App* cmd, CliOptions& opts) {
    cmd->add_option("--seed", opts.config.seed, "Base seed for all random streams");
    cmd->add_option("--n-range", opts.n_range_text, "Metrology qubit range, LO..HI (default 1..10)");
    cmd->add_option("--m-range", opts.m_range_text, "Ensemble copy range, LO..HI (default 1..8)");
    cmd->add_option("--theta-points", opts.config.theta_points,
                    "Points per theta grid (default 100)");
    cmd->add_option("--out", opts.config.output_path, "Write the report here instead of stdout");
    cmd->add_option("--format", opts.format_text, "Report format: json or csv (default json)");
}

void finalize_config(CliOptions& opts) {
    if (!opts.n_range_text.empty()) {
        opts.config.n_range = parse_range(opts.n_range_text);
    }
    if (!opts.m_range_text.empty()) {
        opts.config.m_range = parse_range(opts.m_range_text);
    }
    if (opts.format_text == "json") {
        opts.config.format = Format::kJson;
    } else if (opts.format_text == "csv") {
        opts.config.format = Format::kCsv;
    } else {
        throw CLI::ValidationError("--format", "expected json or csv");
    }
    opts.config.suite = parse_suite(opts.suite);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical verification of sum-uncertainty properties: seeded property-test "
                 "campaigns and closed-form reproduction tables"};
    app.require_subcommand(1);

    CliOptions opts;

    CLI::App* check = app.add_subcommand("check", "Run a property-test campaign");
    check->add_option("suite", opts.suite, "One of sum|collective|metrology|speed|all")
        ->required();
    check->add_option("--trials", opts.config.trials,
                      "Random trials per dimension (default 1000)");
    check
        ->add_option("--dims", opts.config.dims,
                     "Hilbert-space dimensions, comma separated (default 2,3,4,8,16)")
        ->delimiter(',');
    check->add_option("--threads", opts.config.threads,
                      "Worker threads; 0 = hardware concurrency (results do not depend on this)");
    check->add_flag("--timing", opts.config.include_timing,
                    "Include wall-clock duration in the report (breaks byte-reproducibility)");
    add_common_flags(check, opts);

    CLI::App* tables = app.add_subcommand("tables", "Emit closed-form reproduction tables");
    add_common_flags(tables, opts);

    CLI11_PARSE(app, argc, argv);

    try {
        if (check->parsed()) {
            finalize_config(opts);
            quncert::campaign::validate(opts.config);
            const auto report = quncert::campaign::run_campaign(opts.config);
            write_output(opts.config.output_path, quncert::campaign::render_report(report));

            std::int64_t failures = 0;
            for (const auto& s : report.suites) {
                std::cerr << "suite " << s.name << ": " << s.trials << " trials, " << s.failures
                          << " failures, worst margin " << s.worst.value << " (stream "
                          << s.worst.stream << ", dim " << s.worst.dim << ")\n";
                failures += s.failures;
            }
            std::cerr << "completed in " << report.duration_ms << " ms\n";
            return failures == 0 ? 0 : 1;
        }

        opts.suite = "all";
        finalize_config(opts);
        quncert::campaign::validate(opts.config);
        const auto table_set = quncert::campaign::emit_reproduction_tables(opts.config);
        write_output(opts.config.output_path, quncert::campaign::render_tables(table_set));
        return 0;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const quncert::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const quncert::ResourceGuardError& e) {
        std::cerr << "refused: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
