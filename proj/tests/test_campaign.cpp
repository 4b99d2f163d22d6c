/**
 * Copyright 2026, quncert developers.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE file in the root directory of this source tree.
 */

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>

#include <json.hpp>

#include "quncert/campaign.hpp"

using namespace quncert;
using namespace quncert::campaign;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

CampaignConfig small_config() {
    CampaignConfig config;
    config.trials = 40;
    config.dims = {2, 3};
    config.seed = 42;
    config.n_range = {1, 4};
    config.m_range = {1, 3};
    config.theta_points = 5;
    return config;
}

}  // namespace

TEST_CASE("campaign results are identical across thread counts", "[campaign]") {
    CampaignConfig one = small_config();
    one.threads = 1;
    CampaignConfig two = small_config();
    two.threads = 2;

    const CampaignReport r1 = run_campaign(one);
    const CampaignReport r2 = run_campaign(two);
    REQUIRE(r1.suites.size() == r2.suites.size());
    for (std::size_t i = 0; i < r1.suites.size(); ++i) {
        REQUIRE(r1.suites[i].name == r2.suites[i].name);
        REQUIRE(r1.suites[i].trials == r2.suites[i].trials);
        REQUIRE(r1.suites[i].failures == r2.suites[i].failures);
        REQUIRE(r1.suites[i].worst.value == r2.suites[i].worst.value);
        REQUIRE(r1.suites[i].worst.stream == r2.suites[i].worst.stream);
        REQUIRE(r1.suites[i].worst.dim == r2.suites[i].worst.dim);
    }
}

TEST_CASE("campaign reports are byte-identical across reruns", "[campaign]") {
    const CampaignConfig config = small_config();
    const std::string first = render_report(run_campaign(config));
    const std::string second = render_report(run_campaign(config));
    REQUIRE(first == second);
}

TEST_CASE("scaled-down default campaign records zero failures", "[campaign]") {
    const CampaignReport report = run_campaign(small_config());
    REQUIRE(report.suites.size() == 4);
    for (const SuiteResult& s : report.suites) {
        INFO(s.name << " worst margin " << s.worst.value << " at stream " << s.worst.stream);
        REQUIRE(s.failures == 0);
        REQUIRE(s.worst.value >= 0.0);
    }
    REQUIRE(report.total_failures() == 0);
}

TEST_CASE("json report carries the pinned schema", "[campaign]") {
    CampaignConfig config = small_config();
    config.suite = Suite::kSum;
    const CampaignReport report = run_campaign(config);
    const nlohmann::json parsed = nlohmann::json::parse(report_to_json(report));

    REQUIRE(parsed.at("schema-version").get<int>() == 1);
    REQUIRE(parsed.at("config-echo").at("seed").get<std::uint64_t>() == 42);
    REQUIRE(parsed.at("config-echo").at("suite").get<std::string>() == "sum");
    REQUIRE(parsed.at("suites").size() == 1);
    const auto& suite = parsed.at("suites").at(0);
    REQUIRE(suite.at("name").get<std::string>() == "sum");
    REQUIRE(suite.at("trials").get<std::int64_t>() == 80);
    REQUIRE(suite.at("failures").get<std::int64_t>() == 0);
    REQUIRE(suite.at("worst").contains("value"));
    REQUIRE(suite.at("worst").contains("seed"));
    REQUIRE(suite.at("worst").contains("stream"));
    REQUIRE(suite.at("worst").contains("dim"));
    // Timing is opt-in precisely because it breaks reproducibility.
    REQUIRE_FALSE(parsed.contains("duration-ms"));

    CampaignConfig timed = config;
    timed.include_timing = true;
    const nlohmann::json with_timing =
        nlohmann::json::parse(report_to_json(run_campaign(timed)));
    REQUIRE(with_timing.contains("duration-ms"));
}

TEST_CASE("csv report round-trips 17 significant digits", "[campaign]") {
    CampaignConfig config = small_config();
    config.suite = Suite::kSpeed;
    config.format = Format::kCsv;
    const CampaignReport report = run_campaign(config);
    const std::string csv = report_to_csv(report);

    REQUIRE(csv.rfind("schema-version,name,trials,failures,worst-value,", 0) == 0);
    const auto line_start = csv.find('\n') + 1;
    const auto line = csv.substr(line_start, csv.find('\n', line_start) - line_start);
    // Field 5 is worst-value; parsing it back must reproduce the double.
    std::size_t pos = 0;
    for (int field = 0; field < 4; ++field) {
        pos = line.find(',', pos) + 1;
    }
    const double parsed = std::strtod(line.c_str() + pos, nullptr);
    REQUIRE(parsed == report.suites.at(0).worst.value);
}

TEST_CASE("tables reproduce the closed forms", "[campaign]") {
    CampaignConfig config;
    config.seed = 7;
    config.n_range = {1, 9};
    config.m_range = {1, 4};

    const TableSet tables = emit_reproduction_tables(config);

    SECTION("sqrt(N) ratio rows at the perfect squares") {
        REQUIRE(tables.sqrt_n_ratio.size() == 9);
        REQUIRE(tables.sqrt_n_ratio.at(0).closed_ratio == 1.0);
        REQUIRE(tables.sqrt_n_ratio.at(3).closed_ratio == 2.0);
        REQUIRE(tables.sqrt_n_ratio.at(8).closed_ratio == 3.0);
        for (const auto& row : tables.sqrt_n_ratio) {
            REQUIRE(row.residual <= 1e-9);
            REQUIRE(row.dense_residual.has_value());  // 2^9 is within the guard
            REQUIRE(*row.dense_residual <= 1e-9 * std::max(1.0, row.measured_ratio));
        }
    }

    SECTION("precision rows pin delta-theta to 1/2^N") {
        for (const auto& row : tables.precision_vs_n) {
            REQUIRE_THAT(row.delta_theta_product, WithinRel(row.closed, 1e-9));
            REQUIRE_THAT(row.delta_theta_sum, WithinRel(row.closed, 1e-9));
            REQUIRE_THAT(row.delta_theta_individual, WithinRel(row.closed, 1e-9));
            REQUIRE(row.residual <= 1e-9);
            if (row.qubits <= 8) {
                REQUIRE(row.dense_residual.has_value());
                REQUIRE(*row.dense_residual <= 1e-9);
            }
        }
    }

    SECTION("ensemble rows carry the resource-normalized comparison") {
        bool found_4_3 = false;
        for (const auto& row : tables.ensemble) {
            REQUIRE(row.identity_residual <= 1e-12);
            if (row.copies == 4 && row.qubits == 3) {
                found_4_3 = true;
                REQUIRE(row.closed == 0.0625);
                REQUIRE(row.single_block == 1.0 / 4096.0);
                REQUIRE_THAT(row.delta_theta_ensemble, WithinRel(0.0625, 1e-9));
                REQUIRE(row.dense_residual.has_value());
                REQUIRE(*row.dense_residual <= 1e-9);
            }
            if (row.copies >= 2) {
                REQUIRE(row.closed > row.single_block);
            }
        }
        REQUIRE(found_4_3);
    }

    SECTION("serializations are deterministic and well-formed") {
        const std::string csv = tables_to_csv(tables);
        REQUIRE(csv == tables_to_csv(emit_reproduction_tables(config)));
        REQUIRE(csv.rfind("table,sites,", 0) == 0);

        const nlohmann::json parsed = nlohmann::json::parse(tables_to_json(tables));
        REQUIRE(parsed.at("tables").contains("sqrt-n-ratio"));
        REQUIRE(parsed.at("tables").contains("delta-theta-vs-n"));
        REQUIRE(parsed.at("tables").contains("ensemble"));
    }
}

TEST_CASE("config validation rejects out-of-guard requests", "[campaign]") {
    CampaignConfig config = small_config();

    config.trials = 0;
    REQUIRE_THROWS_AS(validate(config), ValidationError);

    config = small_config();
    config.dims = {};
    REQUIRE_THROWS_AS(validate(config), ValidationError);

    config = small_config();
    config.dims = {2, 4, 1000};
    REQUIRE_THROWS_AS(validate(config), ValidationError);

    config = small_config();
    config.n_range = {0, 4};
    REQUIRE_THROWS_AS(validate(config), ValidationError);

    config = small_config();
    config.n_range = {1, 53};
    REQUIRE_THROWS_AS(validate(config), ValidationError);

    config = small_config();
    config.theta_points = 0;
    REQUIRE_THROWS_AS(validate(config), ValidationError);

    config = small_config();
    config.m_range = {3, 2};
    REQUIRE_THROWS_AS(validate(config), ValidationError);
}

TEST_CASE("theta grid keeps clear of singular points", "[campaign]") {
    for (int n = 1; n <= 10; ++n) {
        const double period = std::numbers::pi * std::ldexp(1.0, -n);
        const double exclusion = 1e-6 * std::ldexp(1.0, 1 - n);
        for (int j = 0; j < 100; ++j) {
            const double theta = campaign::detail::theta_grid_point(n, j, 100);
            const double nearest = std::min(std::fmod(theta, period), period - std::fmod(theta, period));
            REQUIRE(theta > 0.0);
            REQUIRE(theta < period);
            REQUIRE(nearest > exclusion);
        }
    }
}
