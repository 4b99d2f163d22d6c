/**
 * Copyright 2026, quncert developers.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE file in the root directory of this source tree.
 */

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Eigenvalues>

#include "quncert/sum_relation.hpp"
#include "support/oracles.hpp"

using namespace quncert;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

const double kRoot2 = std::sqrt(2.0);

}  // namespace

TEST_CASE("pair gap: scaling, cancellation, Pauli case", "[sum]") {
    RandomStream g(RandomSource{40, 0});
    const HermitianObservable a = sample_hermitian(4, g);
    const StateVector psi = sample_haar_state(4, g);

    const GapReport same = sum_uncertainty_gap(a, a, psi);
    REQUIRE_THAT(same.gap, WithinAbs(0.0, 1e-10));
    REQUIRE_THAT(same.lhs, WithinRel(2.0 * uncertainty(a, psi), 1e-12));

    const GapReport cancel = sum_uncertainty_gap(a, -a, psi);
    REQUIRE(cancel.lhs == 0.0);
    REQUIRE_THAT(cancel.gap, WithinRel(2.0 * uncertainty(a, psi), 1e-12));

    const GapReport pauli = sum_uncertainty_gap(pauli_x(), pauli_y(), basis_state(2, 0));
    REQUIRE_THAT(pauli.lhs, WithinAbs(kRoot2, 1e-12));
    REQUIRE_THAT(pauli.rhs, WithinAbs(2.0, 1e-12));
    REQUIRE_THAT(pauli.gap, WithinAbs(2.0 - kRoot2, 1e-12));

    REQUIRE_THROWS_AS(sum_uncertainty_gap(pauli_x(), identity(3), basis_state(2, 0)),
                      DimensionError);
}

TEST_CASE("multi-term gap", "[sum]") {
    RandomStream g(RandomSource{41, 0});
    const HermitianObservable a = sample_hermitian(3, g);
    const StateVector psi = sample_haar_state(3, g);

    const std::vector<HermitianObservable> single{a};
    REQUIRE(multi_sum_gap(single, psi).gap == 0.0);

    const std::vector<HermitianObservable> triple{a, a, a};
    const GapReport copies = multi_sum_gap(triple, psi);
    REQUIRE_THAT(copies.lhs, WithinRel(3.0 * uncertainty(a, psi), 1e-12));
    REQUIRE_THAT(copies.gap, WithinAbs(0.0, 1e-10));

    const std::vector<HermitianObservable> paulis{pauli_x(), pauli_y(), pauli_z()};
    const GapReport xyz = multi_sum_gap(paulis, basis_state(2, 0));
    REQUIRE_THAT(xyz.lhs, WithinAbs(kRoot2, 1e-12));
    REQUIRE_THAT(xyz.rhs, WithinAbs(2.0, 1e-12));

    REQUIRE_THROWS_AS(multi_sum_gap(std::vector<HermitianObservable>{}, psi), ValidationError);
    const std::vector<HermitianObservable> mixed{a, pauli_x()};
    REQUIRE_THROWS_AS(multi_sum_gap(mixed, psi), DimensionError);
}

TEST_CASE("weighted gap", "[sum]") {
    RandomStream g(RandomSource{42, 0});
    const HermitianObservable a = sample_hermitian(3, g);
    const HermitianObservable b = sample_hermitian(3, g);
    const StateVector psi = sample_haar_state(3, g);

    const WeightedObservableSet half({0.5}, {a});
    REQUIRE_THAT(weighted_sum_gap(half, psi).gap, WithinAbs(0.0, 1e-12));

    // Unit weights reduce exactly to the plain multi-term computation.
    const std::vector<HermitianObservable> both{a, b};
    const WeightedObservableSet units({1.0, 1.0}, both);
    const GapReport weighted = weighted_sum_gap(units, psi);
    const GapReport plain = multi_sum_gap(both, psi);
    REQUIRE(weighted.lhs == plain.lhs);
    REQUIRE(weighted.rhs == plain.rhs);

    const WeightedObservableSet pauli_mix({0.3, 0.7}, {pauli_x(), pauli_y()});
    const GapReport mix = weighted_sum_gap(pauli_mix, basis_state(2, 0));
    REQUIRE_THAT(mix.lhs, WithinAbs(std::sqrt(0.58), 1e-12));
    REQUIRE_THAT(mix.rhs, WithinAbs(1.0, 1e-12));

    REQUIRE_THROWS_AS(WeightedObservableSet({0.5, 0.0}, both), ValidationError);
    REQUIRE_THROWS_AS(WeightedObservableSet({0.5, -1.0}, both), ValidationError);
    REQUIRE_THROWS_AS(WeightedObservableSet({0.5, 0.5}, {a, pauli_x()}), DimensionError);
}

TEST_CASE("midpoint convexity", "[sum]") {
    const std::vector<HermitianObservable> xy{pauli_x(), pauli_y()};
    const StateVector zero = basis_state(2, 0);

    SECTION("degenerate midpoint has zero margin") {
        const WeightedObservableSet p({0.4, 0.6}, xy);
        const MidpointConvexityReport report = convexity_midpoint_check(p, p, zero);
        REQUIRE(report.holds);
        REQUIRE(report.margin == 0.0);
    }

    SECTION("near-corner weightings on X and Y") {
        // The exact corners (1,0) and (0,1) are excluded by the positive-
        // weight invariant; an epsilon inside, the midpoint is still exactly
        // (1/2, 1/2) and the classical values are recovered to O(epsilon).
        const double eps = 1e-6;
        const WeightedObservableSet p({1.0 - eps, eps}, xy);
        const WeightedObservableSet q({eps, 1.0 - eps}, xy);
        const MidpointConvexityReport report = convexity_midpoint_check(p, q, zero);
        REQUIRE(report.holds);
        const double lhs = uncertainty(
            detail::weighted_sum(std::vector<double>{0.5, 0.5}, xy), zero);
        REQUIRE_THAT(lhs, WithinAbs(kRoot2 / 2.0, 1e-9));
        REQUIRE_THAT(report.margin, WithinAbs(1.0 - kRoot2 / 2.0, 1e-5));
    }

    SECTION("commuting diagonal instances against the brute-force oracle") {
        for (std::uint64_t t = 0; t < 40; ++t) {
            RandomStream g(RandomSource{43, t});
            const Index dim = 4;
            std::vector<HermitianObservable> diagonals;
            std::vector<Eigen::VectorXd> profiles;
            for (int k = 0; k < 3; ++k) {
                Eigen::VectorXd v(dim);
                for (Index j = 0; j < dim; ++j) {
                    v(j) = g.uniform(-2.0, 2.0);
                }
                profiles.push_back(v);
                diagonals.push_back(diagonal_observable(v));
            }
            auto convex_weights = [&g]() {
                std::vector<double> w(3);
                double sum = 0.0;
                for (double& x : w) {
                    x = g.uniform(0.05, 1.0);
                    sum += x;
                }
                for (double& x : w) {
                    x /= sum;
                }
                return w;
            };
            const std::vector<double> p = convex_weights();
            const std::vector<double> q = convex_weights();
            const StateVector psi = sample_haar_state(dim, g);

            const MidpointConvexityReport report = convexity_midpoint_check(
                WeightedObservableSet(p, diagonals), WeightedObservableSet(q, diagonals), psi);
            REQUIRE(report.holds);

            // Brute-force margin from probability arithmetic on the diagonals.
            auto combined_spread = [&](const std::vector<double>& w) {
                Eigen::VectorXd values = Eigen::VectorXd::Zero(dim);
                for (int k = 0; k < 3; ++k) {
                    values += w[k] * profiles[k];
                }
                return testing::diagonal_spread_oracle(values, psi.amplitudes());
            };
            std::vector<double> mid(3);
            for (int k = 0; k < 3; ++k) {
                mid[k] = 0.5 * (p[k] + q[k]);
            }
            const double oracle_margin =
                0.5 * combined_spread(p) + 0.5 * combined_spread(q) - combined_spread(mid);
            REQUIRE_THAT(report.margin, WithinAbs(oracle_margin, 1e-12));
        }
    }

    SECTION("rejects mismatched lists and nonconvex weights") {
        const WeightedObservableSet p({0.4, 0.6}, xy);
        const WeightedObservableSet other({0.4, 0.6}, {pauli_x(), pauli_z()});
        REQUIRE_THROWS_AS(convexity_midpoint_check(p, other, zero), ValidationError);
        const WeightedObservableSet not_convex({0.4, 0.7}, xy);
        REQUIRE_FALSE(not_convex.is_convex_combination());
        REQUIRE_THROWS_AS(convexity_midpoint_check(p, not_convex, zero), ValidationError);
    }
}

TEST_CASE("state mixture uncertainty", "[sum]") {
    RandomStream g(RandomSource{44, 0});
    const HermitianObservable a = sample_hermitian(2, g);
    const StateVector psi = sample_haar_state(2, g);

    const std::vector<StateVector> copies{psi, psi, psi};
    const std::vector<double> w{0.25, 0.25, 0.5};
    REQUIRE_THAT(state_mixture_uncertainty(copies, w, a),
                 WithinAbs(uncertainty(a, psi), 1e-15));

    const StateVector plus = StateVector::normalized(testing::vec({{1.0, 0.0}, {1.0, 0.0}}));
    const std::vector<StateVector> zp{basis_state(2, 0), plus};
    const std::vector<double> half{0.5, 0.5};
    REQUIRE_THAT(state_mixture_uncertainty(zp, half, pauli_z()), WithinAbs(0.5, 1e-12));

    const std::vector<StateVector> one{psi};
    const std::vector<double> unit{1.0};
    REQUIRE(state_mixture_uncertainty(one, unit, a) == uncertainty(a, psi));

    REQUIRE_THROWS_AS(state_mixture_uncertainty(zp, unit, pauli_z()), ValidationError);
    const std::vector<double> not_convex{0.5, 0.6};
    REQUIRE_THROWS_AS(state_mixture_uncertainty(zp, not_convex, pauli_z()), ValidationError);
}

TEST_CASE("equality witness saturates the bound", "[sum]") {
    RandomStream g(RandomSource{45, 0});
    const HermitianObservable a2 = sample_hermitian(2, g);
    const StateVector psi2 = sample_haar_state(2, g);
    const GapReport plain = equality_witness(a2, psi2, 1.0, 0.0);
    REQUIRE_THAT(plain.gap, WithinAbs(0.0, 1e-10));
    REQUIRE_THAT(plain.lhs, WithinRel(2.0 * uncertainty(a2, psi2), 1e-10));

    RandomStream g8(RandomSource{45, 1});
    const HermitianObservable a8 = sample_hermitian(8, g8);
    const StateVector psi8 = sample_haar_state(8, g8);
    REQUIRE_THAT(equality_witness(a8, psi8, 3.0, -7.0).gap, WithinAbs(0.0, 1e-10));

    const GapReport pauli = equality_witness(pauli_x(), basis_state(2, 0), 0.5, 2.0);
    REQUIRE_THAT(pauli.lhs, WithinAbs(1.5, 1e-12));
    REQUIRE_THAT(pauli.rhs, WithinAbs(1.5, 1e-12));

    REQUIRE_THROWS_AS(equality_witness(a2, psi2, 0.0, 1.0), ValidationError);
    REQUIRE_THROWS_AS(equality_witness(a2, psi2, -2.0, 1.0), ValidationError);
}

TEST_CASE("kinetic plus potential on a grid", "[sum]") {
    SECTION("vanishing potential collapses the gap to zero") {
        const Index n = 32;
        const std::vector<double> zeros(n, 0.0);
        const StateVector psi = sample_haar_state(n, RandomSource{46, 0});
        const KineticPotentialReport report = kinetic_potential_demo(n, 0.5, zeros, psi);
        REQUIRE(report.potential_spread == 0.0);
        REQUIRE(report.gap.gap == 0.0);
        REQUIRE(report.total_spread == report.kinetic_spread);
    }

    SECTION("exact eigenvector of T + V has zero total spread") {
        const Index n = 24;
        const double a = 0.3;
        std::vector<double> profile(n);
        for (Index j = 0; j < n; ++j) {
            const double x = (static_cast<double>(j) - (n - 1) / 2.0) * a;
            profile[j] = 0.5 * x * x;
        }
        const HermitianObservable t = kinetic_matrix(n, a);
        const HermitianObservable v =
            diagonal_observable(Eigen::Map<const Eigen::VectorXd>(profile.data(), n));
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(t.matrix() + v.matrix());
        const StateVector ground = StateVector::normalized(solver.eigenvectors().col(0));

        const KineticPotentialReport report = kinetic_potential_demo(n, a, profile, ground);
        REQUIRE_THAT(report.total_spread, WithinAbs(0.0, 1e-6));
        REQUIRE(report.gap.gap >= -1e-10);
        REQUIRE(report.gap.gap > 0.1);  // T and V do not commute here
    }

    SECTION("harmonic profile with a displaced packet: frozen reference values") {
        // Expected values computed with an independent dense-grid
        // implementation of the same discretization (64 points, a = 0.25,
        // V = x^2/2, psi ~ exp(-(x-1)^2/2) exp(0.7 i x)).
        const Index n = 64;
        const double a = 0.25;
        std::vector<double> profile(n);
        Eigen::VectorXcd raw(n);
        for (Index j = 0; j < n; ++j) {
            const double x = (static_cast<double>(j) - (n - 1) / 2.0) * a;
            profile[j] = 0.5 * x * x;
            raw(j) = std::polar(std::exp(-(x - 1.0) * (x - 1.0) / 2.0), 0.7 * x);
        }
        const StateVector psi = StateVector::normalized(raw);
        const KineticPotentialReport report = kinetic_potential_demo(n, a, profile, psi);
        REQUIRE_THAT(report.kinetic_spread, WithinRel(0.5937821791743144, 1e-9));
        REQUIRE_THAT(report.potential_spread, WithinRel(0.7905694150420949, 1e-9));
        REQUIRE_THAT(report.total_spread, WithinRel(0.857445236770753, 1e-9));
        REQUIRE_THAT(report.gap.gap, WithinRel(0.5269063574456563, 1e-9));
        REQUIRE(report.gap.gap > 0.0);
    }

    SECTION("size mismatches are rejected") {
        const std::vector<double> profile(8, 0.0);
        const StateVector psi = sample_haar_state(8, RandomSource{46, 1});
        REQUIRE_THROWS_AS(kinetic_potential_demo(9, 0.5, profile, psi), DimensionError);
        REQUIRE_THROWS_AS(kinetic_potential_demo(8, 0.5, std::vector<double>(7, 0.0), psi),
                          DimensionError);
        REQUIRE_THROWS_AS(kinetic_matrix(8, 0.0), ValidationError);
    }
}

TEST_CASE("sum relation property sweep", "[sum]") {
    for (Index dim : {2, 3, 4, 8, 16}) {
        for (std::uint64_t t = 0; t < 200; ++t) {
            RandomStream g(RandomSource{47, static_cast<std::uint64_t>(dim) * 1000 + t});
            const HermitianObservable a = sample_hermitian(dim, g);
            const HermitianObservable b = sample_hermitian(dim, g);
            const StateVector psi = sample_haar_state(dim, g);

            const GapReport pair = sum_uncertainty_gap(a, b, psi);
            REQUIRE(pair.gap >= -1e-10);

            // Reverse triangle from the same proof applied to (A+B) and -B.
            const double da = uncertainty(a, psi);
            const double db = uncertainty(b, psi);
            REQUIRE(pair.lhs >= std::abs(da - db) - 1e-10);

            // Difference form via evenness.
            REQUIRE(sum_uncertainty_gap(a, -b, psi).gap >= -1e-10);

            // k-term and weighted forms.
            const std::size_t k = 2 + t % 5;
            std::vector<HermitianObservable> many{a, b};
            for (std::size_t i = 2; i < k; ++i) {
                many.push_back(sample_hermitian(dim, g));
            }
            REQUIRE(multi_sum_gap(many, psi).gap >= -1e-10);

            std::vector<double> weights(k);
            for (double& w : weights) {
                w = g.uniform(0.05, 2.0);
            }
            REQUIRE(weighted_sum_gap(WeightedObservableSet(weights, many), psi).gap >= -1e-10);

            // Equality family.
            const double c = g.uniform(0.1, 3.0);
            const double d = 2.0 * g.normal();
            REQUIRE(std::abs(equality_witness(a, psi, c, d).gap) <= 1e-10);
        }
    }
}
