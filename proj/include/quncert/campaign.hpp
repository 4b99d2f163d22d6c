/**
 * Copyright 2026, quncert developers.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE file in the root directory of this source tree.
 */

#ifndef QUNCERT_CAMPAIGN_HPP
#define QUNCERT_CAMPAIGN_HPP

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <json.hpp>

#include "quncert/collective.hpp"
#include "quncert/core.hpp"
#include "quncert/dynamics.hpp"
#include "quncert/metrology.hpp"
#include "quncert/sum_relation.hpp"

namespace quncert::campaign {

// ---------------------------------------------------------------------------
// Configuration
// ---------------------------------------------------------------------------

enum class Suite { kSum, kCollective, kMetrology, kSpeed, kAll };
enum class Format { kJson, kCsv };

struct IntRange {
    int lo = 1;
    int hi = 1;
};

struct CampaignConfig {
    Suite suite = Suite::kAll;
    std::int64_t trials = 1000;  // per dimension (or per combo) within each suite
    std::vector<int> dims = {2, 3, 4, 8, 16};
    std::uint64_t seed = 0;
    IntRange n_range{1, 10};  // metrology qubit counts
    IntRange m_range{1, 8};   // ensemble copy counts
    int theta_points = 100;
    std::string output_path;  // empty: print to stdout
    Format format = Format::kJson;
    int threads = 0;  // 0 = hardware concurrency
    /// Wall-clock duration is nondeterministic, so it is written to the
    /// report only on request; byte-identical reruns stay the default.
    bool include_timing = false;
};

inline const char* suite_name(Suite s) {
    switch (s) {
        case Suite::kSum: return "sum";
        case Suite::kCollective: return "collective";
        case Suite::kMetrology: return "metrology";
        case Suite::kSpeed: return "speed";
        case Suite::kAll: return "all";
    }
    return "?";
}

inline const char* format_name(Format f) { return f == Format::kJson ? "json" : "csv"; }

inline void validate(const CampaignConfig& config) {
    if (config.trials < 1) {
        throw ValidationError("config: trials must be >= 1");
    }
    if (config.dims.empty()) {
        throw ValidationError("config: dims must be nonempty");
    }
    for (int d : config.dims) {
        if (d < 1 || d > kEvolveDimLimit) {
            throw ValidationError("config: each dim must lie in [1, " +
                                  std::to_string(kEvolveDimLimit) +
                                  "] (dense evolution guard), got " + std::to_string(d));
        }
    }
    if (config.n_range.lo < 1 || config.n_range.hi < config.n_range.lo || config.n_range.hi > 52) {
        throw ValidationError("config: n-range must satisfy 1 <= lo <= hi <= 52 (probe guard)");
    }
    if (config.m_range.lo < 1 || config.m_range.hi < config.m_range.lo) {
        throw ValidationError("config: m-range must satisfy 1 <= lo <= hi");
    }
    if (config.theta_points < 1) {
        throw ValidationError("config: theta-points must be >= 1");
    }
    if (config.threads < 0) {
        throw ValidationError("config: threads must be >= 0");
    }
}

// ---------------------------------------------------------------------------
// Report structures
// ---------------------------------------------------------------------------

/// The check closest to its acceptance boundary. value is the remaining
/// margin in units of the allowed tolerance; negative means a violation.
struct WorstCase {
    double value = std::numeric_limits<double>::infinity();
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
    std::int64_t dim = 0;
};

struct SuiteResult {
    std::string name;
    std::int64_t trials = 0;
    std::int64_t failures = 0;
    WorstCase worst;
};

struct CampaignReport {
    int schema_version = 1;
    CampaignConfig config;
    std::vector<SuiteResult> suites;
    std::int64_t duration_ms = 0;

    std::int64_t total_failures() const {
        std::int64_t total = 0;
        for (const auto& s : suites) {
            total += s.failures;
        }
        return total;
    }
};

// ---------------------------------------------------------------------------
// Deterministic parallel trial runner
// ---------------------------------------------------------------------------

namespace detail {

struct TrialOutcome {
    double score = std::numeric_limits<double>::infinity();
    std::int64_t dim = 0;
};

/// Gathers per-trial margins. Every check is normalized so that a score
/// below zero is a violation, regardless of whether the underlying check was
/// an inequality slack or an equality residual.
class Scorer {
public:
    /// quantity >= -tolerance wanted.
    void slack(double quantity, double tolerance) { fold((quantity + tolerance) / tolerance); }
    /// |residual| <= tolerance wanted.
    void residual(double value, double tolerance) {
        fold((tolerance - std::abs(value)) / tolerance);
    }
    void boolean(bool ok) { fold(ok ? 1.0 : -1.0); }

    double score() const { return score_; }

private:
    void fold(double s) { score_ = std::min(score_, s); }
    double score_ = std::numeric_limits<double>::infinity();
};

inline int resolve_threads(int requested) {
    if (requested > 0) {
        return requested;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Runs fn over stream ids [0, count) on a fixed stride partition. The merge
/// is commutative (sum + lexicographic min by (value, stream)), so the result
/// is identical for every thread count.
inline SuiteResult run_trials(const std::string& name, std::uint64_t count, int threads,
                              std::uint64_t seed,
                              const std::function<TrialOutcome(std::uint64_t)>& fn) {
    struct Local {
        std::int64_t failures = 0;
        WorstCase worst;
    };
    const int workers = static_cast<int>(std::min<std::uint64_t>(
        static_cast<std::uint64_t>(resolve_threads(threads)), std::max<std::uint64_t>(count, 1)));
    std::vector<Local> locals(workers);

    auto body = [&](int w) {
        Local& local = locals[w];
        for (std::uint64_t s = w; s < count; s += workers) {
            TrialOutcome outcome;
            try {
                outcome = fn(s);
            } catch (const std::exception&) {
                // A throwing trial is a hard failure; keep the value finite
                // so the report stays serializable.
                outcome = TrialOutcome{-std::numeric_limits<double>::max(), 0};
            }
            if (outcome.score < 0.0) {
                ++local.failures;
            }
            if (outcome.score < local.worst.value ||
                (outcome.score == local.worst.value && s < local.worst.stream)) {
                local.worst = WorstCase{outcome.score, seed, s, outcome.dim};
            }
        }
    };

    if (workers == 1) {
        body(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back(body, w);
        }
        for (auto& t : pool) {
            t.join();
        }
    }

    SuiteResult result{name, static_cast<std::int64_t>(count), 0, WorstCase{}};
    result.worst.seed = seed;
    for (const Local& local : locals) {
        result.failures += local.failures;
        if (local.worst.value < result.worst.value ||
            (local.worst.value == result.worst.value && local.worst.stream < result.worst.stream)) {
            result.worst = local.worst;
        }
    }
    return result;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Suite: sum relation
// ---------------------------------------------------------------------------

namespace detail {

inline TrialOutcome sum_trial(const CampaignConfig& config, std::uint64_t stream) {
    const std::uint64_t per_dim = static_cast<std::uint64_t>(config.trials);
    const int dim = config.dims[static_cast<std::size_t>(stream / per_dim)];
    const std::uint64_t t = stream % per_dim;
    RandomStream g(RandomSource{config.seed, stream});
    Scorer scorer;

    const HermitianObservable a = sample_hermitian(dim, g);
    const HermitianObservable b = sample_hermitian(dim, g);
    const StateVector psi = sample_haar_state(dim, g);

    const GapReport pair = sum_uncertainty_gap(a, b, psi);
    scorer.slack(pair.gap, tol::kInequalitySlack);

    // Reverse triangle and difference forms follow from the same proof.
    const double da = uncertainty(a, psi);
    const double db = uncertainty(b, psi);
    scorer.slack(pair.lhs - std::abs(da - db), tol::kInequalitySlack);
    const GapReport diff = sum_uncertainty_gap(a, -b, psi);
    scorer.slack(diff.gap, tol::kInequalitySlack);

    // Robertson product relation as a cross-check on the same draw.
    scorer.slack(da * db - commutator_expectation(a, b, psi), tol::kInequalitySlack);

    // N-term relation, k in 2..6.
    const std::size_t k = 2 + static_cast<std::size_t>(t % 5);
    std::vector<HermitianObservable> many;
    many.reserve(k);
    many.push_back(a);
    many.push_back(b);
    for (std::size_t i = 2; i < k; ++i) {
        many.push_back(sample_hermitian(dim, g));
    }
    scorer.slack(multi_sum_gap(many, psi).gap, tol::kInequalitySlack);

    // Weighted relation with arbitrary positive weights.
    std::vector<double> weights(k);
    for (double& w : weights) {
        w = g.uniform(0.05, 2.0);
    }
    scorer.slack(weighted_sum_gap(WeightedObservableSet(weights, many), psi).gap,
                 tol::kInequalitySlack);

    // Equality family B = cA + dI saturates the bound.
    const double c = g.uniform(0.1, 3.0);
    const double d = 2.0 * g.normal();
    scorer.residual(equality_witness(a, psi, c, d).gap, tol::kInequalitySlack);

    return TrialOutcome{scorer.score(), dim};
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Suite: collective measurement scaling
// ---------------------------------------------------------------------------

namespace detail {

struct CollectiveCombo {
    int local_dim;
    std::int64_t sites;
    bool dense;  // small enough for the dense cross-check in a sweep
};

inline std::vector<CollectiveCombo> collective_combos(const std::vector<int>& dims) {
    std::vector<CollectiveCombo> combos;
    for (int d : dims) {
        std::int64_t n_small = 1;
        while (dense::tensor_dim(d, n_small + 1) <= 256) {
            ++n_small;
        }
        combos.push_back({d, n_small, dense::tensor_dim(d, n_small) <= 256});
        combos.push_back({d, 1000, false});
        combos.push_back({d, 1000000, false});
    }
    return combos;
}

inline TrialOutcome collective_trial(const CampaignConfig& config,
                                     const std::vector<CollectiveCombo>& combos,
                                     std::uint64_t stream) {
    const std::uint64_t per_combo = static_cast<std::uint64_t>(config.trials);
    const CollectiveCombo combo = combos[static_cast<std::size_t>(stream / per_combo)];
    const std::uint64_t t = stream % per_combo;
    RandomStream g(RandomSource{config.seed, stream});
    Scorer scorer;

    const HermitianObservable a = sample_hermitian(combo.local_dim, g);
    const StateVector psi = sample_haar_state(combo.local_dim, g);
    const SiteSumObservable obs(a, combo.sites);
    const ProductState state(psi, combo.sites);

    const double collective = site_sum_uncertainty(obs, state);
    const double individual = individual_sum_uncertainty(obs, state);
    const double root_n = std::sqrt(static_cast<double>(combo.sites));

    // sqrt(N) error ratio between individual and collective strategies.
    if (collective > 0.0) {
        scorer.residual(individual / collective - root_n, 1e-10 * root_n);
    }
    // The sum relation specialized to N copies: sqrt(N) DeltaA <= N DeltaA.
    scorer.slack(individual - collective, tol::kInequalitySlack);
    // Expectation scaling.
    scorer.residual(site_sum_expectation(obs, state) -
                        combo.sites * expectation(a, psi),
                    1e-10 * std::max(1.0, std::abs(site_sum_expectation(obs, state))));

    // Dense cross-check, sparsely: it is the expensive oracle path.
    if (combo.dense && t % 25 == 0) {
        const DenseCrosscheckReport dense_report = dense_crosscheck(obs, state);
        scorer.residual(dense_report.residual, dense_report.tolerance);

        // Second moment of the site sum: N<A^2> + N(N-1)<A>^2.
        const StateVector full(dense::kron_power(psi.amplitudes(), combo.sites));
        const HermitianObservable full_obs(dense::site_sum(a.matrix(), combo.sites));
        const double n = static_cast<double>(combo.sites);
        const double second_dense =
            (full_obs.matrix() * full.amplitudes()).squaredNorm();
        const double mean_local = expectation(a, psi);
        const double second_local = (a.matrix() * psi.amplitudes()).squaredNorm();
        const double second_closed = n * second_local + n * (n - 1.0) * mean_local * mean_local;
        scorer.residual(second_dense - second_closed,
                        1e-9 * std::max(1.0, std::abs(second_closed)));
    }
    return TrialOutcome{scorer.score(), combo.local_dim};
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Suite: metrology
// ---------------------------------------------------------------------------

namespace detail {

/// Interior grid over one period, clear of every singular point.
inline double theta_grid_point(int qubits, int index, int points) {
    const double period = std::numbers::pi * std::ldexp(1.0, -qubits);
    return period * (index + 0.5) / points;
}

inline TrialOutcome metrology_trial(const CampaignConfig& config, std::uint64_t stream) {
    const int points = config.theta_points;
    const int n = config.n_range.lo + static_cast<int>(stream / points);
    const int j = static_cast<int>(stream % points);
    const double theta = theta_grid_point(n, j, points);
    const double closed_precision = std::ldexp(1.0, -n);
    Scorer scorer;

    const TwoBranchState probe(n, theta);
    const MeasurementStats product = product_projector_stats(probe);
    const MeasurementStats sum = sum_projector_stats(probe);
    const MeasurementStats individual = individual_projector_stats(probe);

    for (const MeasurementStats& stats : {product, sum, individual}) {
        // Every strategy reaches delta_theta = 1/2^N away from singular points.
        const PrecisionReport report = mt_bound_check(probe, stats);
        scorer.residual(report.delta_theta - closed_precision, 1e-9 * closed_precision);
        scorer.slack(stats.spread * effective_generator_spread(probe) -
                         0.5 * std::abs(stats.derivative),
                     1e-9);
        scorer.slack(report.delta_theta - *report.mt_lower_bound, 1e-12);
        // Finite-difference derivative agreement.
        scorer.residual(stats.derivative - stats.derivative_numeric,
                        std::max(1e-6, 1e-6 * std::abs(stats.derivative)));
        // Precision through the numeric derivative.
        scorer.residual(stats.spread / std::abs(stats.derivative_numeric) - closed_precision,
                        1e-6 * closed_precision);
    }

    // Sum relation between the joint and the individual projector spreads:
    // saturated on this family.
    scorer.slack(individual.spread - sum.spread, tol::kInequalitySlack);
    scorer.residual(individual.spread - sum.spread, tol::kInequalitySlack);

    // Dense oracle for small N.
    if (n <= 8) {
        const StateVector full(probe.dense_amplitudes());
        const HermitianObservable xprod(dense::product_projector(n));
        const HermitianObservable psum(dense::sum_projector(n));
        scorer.residual(expectation(xprod, full) - product.mean, 1e-10);
        scorer.residual(uncertainty(xprod, full) - product.spread, 1e-10);
        scorer.residual(expectation(psum, full) - sum.mean, 1e-10);
        scorer.residual(uncertainty(psum, full) - sum.spread, 1e-10);
        double site_spread_total = 0.0;
        for (int site = 0; site < n; ++site) {
            site_spread_total += uncertainty(HermitianObservable(dense::site_projector(n, site)), full);
        }
        scorer.residual(site_spread_total - individual.spread, 1e-10 * n);
    }

    // Ensemble checks are theta-independent in their identity part; run them
    // once per qubit count, on the first grid point.
    if (j == 0) {
        for (int m = config.m_range.lo; m <= config.m_range.hi; ++m) {
            if (static_cast<std::int64_t>(m) * n > 52) {
                break;
            }
            const ResourcePrecision rp = resource_normalized_precision(m, n);
            scorer.residual(rp.identity_residual, 1e-12);
            if (m >= 2) {
                scorer.boolean(rp.ensemble_delta_theta > rp.single_block_delta_theta);
            }
            const ProbeEnsemble ensemble(probe, m);
            const MeasurementStats stats = ensemble_sum_stats(ensemble);
            const PrecisionReport report = precision(stats);
            scorer.residual(report.delta_theta - rp.ensemble_delta_theta,
                            1e-9 * rp.ensemble_delta_theta);

            // Dense oracle over the full 2^(MN) ensemble while it stays small.
            if (m * n <= 10 && n <= 10) {
                const ProductState copies(StateVector(probe.dense_amplitudes()), m);
                const SiteSumObservable pi_s(HermitianObservable(dense::product_projector(n)), m);
                const DenseCrosscheckReport dense_report = dense_crosscheck(pi_s, copies);
                scorer.residual(dense_report.residual, dense_report.tolerance);
                scorer.residual(site_sum_expectation(pi_s, copies) - stats.mean,
                                1e-10 * std::max(1.0, std::abs(stats.mean)));
            }
        }
    }
    return TrialOutcome{scorer.score(), n};
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Suite: quantum speed
// ---------------------------------------------------------------------------

namespace detail {

inline TrialOutcome speed_trial(const CampaignConfig& config, std::uint64_t stream) {
    const std::uint64_t per_dim = static_cast<std::uint64_t>(config.trials);
    const int dim = config.dims[static_cast<std::size_t>(stream / per_dim)];
    const std::uint64_t t = stream % per_dim;
    RandomStream g(RandomSource{config.seed, stream});
    Scorer scorer;

    const HermitianObservable h1 = sample_hermitian(dim, g);
    const HermitianObservable h2 = sample_hermitian(dim, g);
    const StateVector psi = sample_haar_state(dim, g);

    for (int sign : {+1, -1}) {
        scorer.slack(speed_subadditivity(h1, h2, psi, sign).slack, tol::kInequalitySlack);
    }

    const HermitianObservable x = sample_hermitian(dim, g);
    const VelocityBoundReport vb = velocity_bound_check(x, h1, h2, psi);
    scorer.slack(vb.margin, tol::kInequalitySlack);
    scorer.slack(vb.robertson_margin, tol::kInequalitySlack);
    // The chain is bound >= robertson_bound >= value.
    scorer.slack(vb.bound - vb.robertson_bound, tol::kInequalitySlack);

    // Fubini-Study phase invariance, on the squared distance.
    const StateVector psi2 = sample_haar_state(dim, g);
    const double base = 1.0 - std::norm(psi.amplitudes().dot(psi2.amplitudes()));
    const Complex phase1 = std::polar(1.0, g.uniform(-3.0, 3.0));
    const Complex phase2 = std::polar(1.0, g.uniform(-3.0, 3.0));
    const StateVector rot1(phase1 * psi.amplitudes());
    const StateVector rot2(phase2 * psi2.amplitudes());
    const double rotated = 1.0 - std::norm(rot1.amplitudes().dot(rot2.amplitudes()));
    scorer.residual(rotated - base, 1e-15);

    // Second-order convergence of the numeric speed, on a sparse subset.
    if (t % 200 == 0) {
        const double exact = quantum_speed(h1, psi);
        const double e1 = std::abs(numeric_speed(h1, psi, 1e-2) - exact);
        const double e2 = std::abs(numeric_speed(h1, psi, 5e-3) - exact);
        const double e3 = std::abs(numeric_speed(h1, psi, 2.5e-3) - exact);
        if (e1 > 1e-10) {
            scorer.residual(e1 / e2 - 4.0, 0.5);
            scorer.residual(e2 / e3 - 4.0, 0.5);
        }
    }
    return TrialOutcome{scorer.score(), dim};
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Campaign driver
// ---------------------------------------------------------------------------

inline std::vector<Suite> selected_suites(Suite s) {
    if (s == Suite::kAll) {
        return {Suite::kSum, Suite::kCollective, Suite::kMetrology, Suite::kSpeed};
    }
    return {s};
}

inline CampaignReport run_campaign(const CampaignConfig& config) {
    validate(config);
    const auto start = std::chrono::steady_clock::now();

    CampaignReport report;
    report.config = config;
    for (Suite suite : selected_suites(config.suite)) {
        switch (suite) {
            case Suite::kSum: {
                const std::uint64_t count =
                    static_cast<std::uint64_t>(config.trials) * config.dims.size();
                report.suites.push_back(detail::run_trials(
                    "sum", count, config.threads, config.seed,
                    [&config](std::uint64_t s) { return detail::sum_trial(config, s); }));
                break;
            }
            case Suite::kCollective: {
                const auto combos = detail::collective_combos(config.dims);
                const std::uint64_t count =
                    static_cast<std::uint64_t>(config.trials) * combos.size();
                report.suites.push_back(detail::run_trials(
                    "collective", count, config.threads, config.seed,
                    [&config, combos](std::uint64_t s) {
                        return detail::collective_trial(config, combos, s);
                    }));
                break;
            }
            case Suite::kMetrology: {
                const std::uint64_t count =
                    static_cast<std::uint64_t>(config.n_range.hi - config.n_range.lo + 1) *
                    config.theta_points;
                report.suites.push_back(detail::run_trials(
                    "metrology", count, config.threads, config.seed,
                    [&config](std::uint64_t s) { return detail::metrology_trial(config, s); }));
                break;
            }
            case Suite::kSpeed: {
                const std::uint64_t count =
                    static_cast<std::uint64_t>(config.trials) * config.dims.size();
                report.suites.push_back(detail::run_trials(
                    "speed", count, config.threads, config.seed,
                    [&config](std::uint64_t s) { return detail::speed_trial(config, s); }));
                break;
            }
            case Suite::kAll: break;
        }
    }

    report.duration_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                             std::chrono::steady_clock::now() - start)
                             .count();
    return report;
}

// ---------------------------------------------------------------------------
// Report serialization
// ---------------------------------------------------------------------------

namespace detail {

/// 17 significant digits: enough to round-trip any double exactly.
inline std::string full_precision(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline nlohmann::json config_echo(const CampaignConfig& config) {
    return nlohmann::json{
        {"suite", suite_name(config.suite)},
        {"trials", config.trials},
        {"dims", config.dims},
        {"seed", config.seed},
        {"n-range", {config.n_range.lo, config.n_range.hi}},
        {"m-range", {config.m_range.lo, config.m_range.hi}},
        {"theta-points", config.theta_points},
        {"out", config.output_path},
        {"format", format_name(config.format)},
        {"threads", config.threads},
    };
}

}  // namespace detail

inline std::string report_to_json(const CampaignReport& report) {
    nlohmann::json suites = nlohmann::json::array();
    for (const SuiteResult& s : report.suites) {
        suites.push_back({
            {"name", s.name},
            {"trials", s.trials},
            {"failures", s.failures},
            {"worst",
             {{"value", s.worst.value},
              {"seed", s.worst.seed},
              {"stream", s.worst.stream},
              {"dim", s.worst.dim}}},
        });
    }
    nlohmann::json root{
        {"schema-version", report.schema_version},
        {"config-echo", detail::config_echo(report.config)},
        {"suites", suites},
    };
    if (report.config.include_timing) {
        root["duration-ms"] = report.duration_ms;
    }
    return root.dump(2) + "\n";
}

inline std::string report_to_csv(const CampaignReport& report) {
    std::string out =
        "schema-version,name,trials,failures,worst-value,worst-seed,worst-stream,worst-dim\n";
    for (const SuiteResult& s : report.suites) {
        out += std::to_string(report.schema_version) + "," + s.name + "," +
               std::to_string(s.trials) + "," + std::to_string(s.failures) + "," +
               detail::full_precision(s.worst.value) + "," + std::to_string(s.worst.seed) + "," +
               std::to_string(s.worst.stream) + "," + std::to_string(s.worst.dim) + "\n";
    }
    if (report.config.include_timing) {
        out += "# duration-ms," + std::to_string(report.duration_ms) + "\n";
    }
    return out;
}

inline std::string render_report(const CampaignReport& report) {
    return report.config.format == Format::kJson ? report_to_json(report) : report_to_csv(report);
}

// ---------------------------------------------------------------------------
// Reproduction tables
// ---------------------------------------------------------------------------

struct SqrtNRatioRow {
    std::int64_t sites = 0;
    double closed_ratio = 0.0;    // sqrt(N)
    double measured_ratio = 0.0;  // individual / collective from sampled inputs
    double residual = 0.0;
    std::optional<double> dense_residual;  // present when d^N fits the guard
};

struct PrecisionVsNRow {
    int qubits = 0;
    double theta = 0.0;
    double delta_theta_product = 0.0;
    double delta_theta_sum = 0.0;
    double delta_theta_individual = 0.0;
    double closed = 0.0;  // 1/2^N
    double residual = 0.0;
    double fd_residual = 0.0;
    std::optional<double> dense_residual;
};

struct EnsembleRow {
    int copies = 0;
    int qubits = 0;
    std::int64_t total_qubits = 0;
    double delta_theta_ensemble = 0.0;
    double closed = 0.0;        // 1/(sqrt(M) 2^N)
    double single_block = 0.0;  // 1/2^K
    double identity_residual = 0.0;
    std::optional<double> dense_residual;
};

struct TableSet {
    CampaignConfig config;
    std::vector<SqrtNRatioRow> sqrt_n_ratio;
    std::vector<PrecisionVsNRow> precision_vs_n;
    std::vector<EnsembleRow> ensemble;
};

inline TableSet emit_reproduction_tables(const CampaignConfig& config) {
    validate(config);
    TableSet tables;
    tables.config = config;

    // sqrt(N) error-ratio table on a seeded qubit-sized instance.
    RandomStream g(RandomSource{config.seed, 0});
    const HermitianObservable local_obs = sample_hermitian(2, g);
    const StateVector local_state = sample_haar_state(2, g);
    for (int n = config.n_range.lo; n <= config.n_range.hi; ++n) {
        const SiteSumObservable obs(local_obs, n);
        const ProductState state(local_state, n);
        SqrtNRatioRow row;
        row.sites = n;
        row.closed_ratio = std::sqrt(static_cast<double>(n));
        row.measured_ratio =
            individual_sum_uncertainty(obs, state) / site_sum_uncertainty(obs, state);
        row.residual = std::abs(row.measured_ratio - row.closed_ratio);
        if (dense::tensor_dim(2, n) <= dense::kDimLimit) {
            row.dense_residual = dense_crosscheck(obs, state).residual;
        }
        tables.sqrt_n_ratio.push_back(row);
    }

    // delta-theta vs N at one representative interior point per N.
    for (int n = config.n_range.lo; n <= config.n_range.hi; ++n) {
        const double theta = detail::theta_grid_point(n, 31, 100);
        const TwoBranchState probe(n, theta);
        PrecisionVsNRow row;
        row.qubits = n;
        row.theta = theta;
        row.closed = std::ldexp(1.0, -n);
        const MeasurementStats product = product_projector_stats(probe);
        const MeasurementStats sum = sum_projector_stats(probe);
        const MeasurementStats individual = individual_projector_stats(probe);
        row.delta_theta_product = precision(product).delta_theta;
        row.delta_theta_sum = precision(sum).delta_theta;
        row.delta_theta_individual = precision(individual).delta_theta;
        row.residual = std::max({std::abs(row.delta_theta_product - row.closed),
                                 std::abs(row.delta_theta_sum - row.closed),
                                 std::abs(row.delta_theta_individual - row.closed)});
        row.fd_residual = std::abs(sum.derivative - sum.derivative_numeric);
        if (n <= 8) {
            const StateVector full(probe.dense_amplitudes());
            const HermitianObservable xprod(dense::product_projector(n));
            const HermitianObservable psum(dense::sum_projector(n));
            row.dense_residual = std::max(
                {std::abs(expectation(xprod, full) - product.mean),
                 std::abs(uncertainty(xprod, full) - product.spread),
                 std::abs(expectation(psum, full) - sum.mean),
                 std::abs(uncertainty(psum, full) - sum.spread)});
        }
        tables.precision_vs_n.push_back(row);
    }

    // Ensemble precision vs (M, N), resource-normalized.
    for (int m = config.m_range.lo; m <= config.m_range.hi; ++m) {
        for (int n = config.n_range.lo; n <= config.n_range.hi; ++n) {
            const std::int64_t k = static_cast<std::int64_t>(m) * n;
            if (k > 52) {
                continue;
            }
            const ResourcePrecision rp = resource_normalized_precision(m, n);
            const double theta = detail::theta_grid_point(n, 31, 100);
            const TwoBranchState probe(n, theta);
            EnsembleRow row;
            row.copies = m;
            row.qubits = n;
            row.total_qubits = k;
            row.delta_theta_ensemble = precision(ensemble_sum_stats(ProbeEnsemble(probe, m))).delta_theta;
            row.closed = rp.ensemble_delta_theta;
            row.single_block = rp.single_block_delta_theta;
            row.identity_residual = rp.identity_residual;
            if (k <= 12 && n <= 12) {
                const ProductState copies(StateVector(probe.dense_amplitudes()), m);
                const SiteSumObservable pi_s(HermitianObservable(dense::product_projector(n)), m);
                row.dense_residual = dense_crosscheck(pi_s, copies).residual;
            }
            tables.ensemble.push_back(row);
        }
    }
    return tables;
}

namespace detail {

inline std::string csv_optional(const std::optional<double>& v) {
    return v ? full_precision(*v) : std::string{};
}

}  // namespace detail

/// One file, three sections; each section carries its own header row and is
/// separated from the next by a blank line.
inline std::string tables_to_csv(const TableSet& tables) {
    std::string out;
    out += "table,sites,closed-ratio,measured-ratio,residual,dense-residual\n";
    for (const auto& r : tables.sqrt_n_ratio) {
        out += "sqrt-n-ratio," + std::to_string(r.sites) + "," +
               detail::full_precision(r.closed_ratio) + "," +
               detail::full_precision(r.measured_ratio) + "," +
               detail::full_precision(r.residual) + "," + detail::csv_optional(r.dense_residual) +
               "\n";
    }
    out += "\n";
    out +=
        "table,qubits,theta,delta-theta-product,delta-theta-sum,delta-theta-individual,closed,"
        "residual,fd-residual,dense-residual\n";
    for (const auto& r : tables.precision_vs_n) {
        out += "delta-theta-vs-n," + std::to_string(r.qubits) + "," +
               detail::full_precision(r.theta) + "," +
               detail::full_precision(r.delta_theta_product) + "," +
               detail::full_precision(r.delta_theta_sum) + "," +
               detail::full_precision(r.delta_theta_individual) + "," +
               detail::full_precision(r.closed) + "," + detail::full_precision(r.residual) + "," +
               detail::full_precision(r.fd_residual) + "," +
               detail::csv_optional(r.dense_residual) + "\n";
    }
    out += "\n";
    out +=
        "table,copies,qubits,total-qubits,delta-theta-ensemble,closed,single-block,"
        "identity-residual,dense-residual\n";
    for (const auto& r : tables.ensemble) {
        out += "ensemble," + std::to_string(r.copies) + "," + std::to_string(r.qubits) + "," +
               std::to_string(r.total_qubits) + "," +
               detail::full_precision(r.delta_theta_ensemble) + "," +
               detail::full_precision(r.closed) + "," + detail::full_precision(r.single_block) +
               "," + detail::full_precision(r.identity_residual) + "," +
               detail::csv_optional(r.dense_residual) + "\n";
    }
    return out;
}

inline std::string tables_to_json(const TableSet& tables) {
    nlohmann::json sqrt_rows = nlohmann::json::array();
    for (const auto& r : tables.sqrt_n_ratio) {
        nlohmann::json row{{"sites", r.sites},
                           {"closed-ratio", r.closed_ratio},
                           {"measured-ratio", r.measured_ratio},
                           {"residual", r.residual}};
        if (r.dense_residual) {
            row["dense-residual"] = *r.dense_residual;
        }
        sqrt_rows.push_back(row);
    }
    nlohmann::json precision_rows = nlohmann::json::array();
    for (const auto& r : tables.precision_vs_n) {
        nlohmann::json row{{"qubits", r.qubits},
                           {"theta", r.theta},
                           {"delta-theta-product", r.delta_theta_product},
                           {"delta-theta-sum", r.delta_theta_sum},
                           {"delta-theta-individual", r.delta_theta_individual},
                           {"closed", r.closed},
                           {"residual", r.residual},
                           {"fd-residual", r.fd_residual}};
        if (r.dense_residual) {
            row["dense-residual"] = *r.dense_residual;
        }
        precision_rows.push_back(row);
    }
    nlohmann::json ensemble_rows = nlohmann::json::array();
    for (const auto& r : tables.ensemble) {
        nlohmann::json row{{"copies", r.copies},
                           {"qubits", r.qubits},
                           {"total-qubits", r.total_qubits},
                           {"delta-theta-ensemble", r.delta_theta_ensemble},
                           {"closed", r.closed},
                           {"single-block", r.single_block},
                           {"identity-residual", r.identity_residual}};
        if (r.dense_residual) {
            row["dense-residual"] = *r.dense_residual;
        }
        ensemble_rows.push_back(row);
    }
    nlohmann::json root{{"schema-version", 1},
                        {"config-echo", detail::config_echo(tables.config)},
                        {"tables",
                         {{"sqrt-n-ratio", sqrt_rows},
                          {"delta-theta-vs-n", precision_rows},
                          {"ensemble", ensemble_rows}}}};
    return root.dump(2) + "\n";
}

inline std::string render_tables(const TableSet& tables) {
    return tables.config.format == Format::kJson ? tables_to_json(tables) : tables_to_csv(tables);
}

}  // namespace quncert::campaign

#endif  // QUNCERT_CAMPAIGN_HPP
