/**
 * Copyright 2026, quncert developers.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE file in the root directory of this source tree.
 */

#ifndef QUNCERT_SUM_RELATION_HPP
#define QUNCERT_SUM_RELATION_HPP

#include <cmath>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "quncert/core.hpp"

namespace quncert {

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

/// Outcome of one sum-relation evaluation.
///
/// lhs is the uncertainty of the combined observable, rhs the (weighted) sum
/// of individual uncertainties. gap = rhs - lhs is nonnegative for every
/// valid input up to roundoff; that statement is the theorem under test, so
/// it is asserted by the suites rather than enforced here.
struct GapReport {
    double lhs = 0.0;
    double rhs = 0.0;
    double gap = 0.0;
};

struct MidpointConvexityReport {
    bool holds = false;
    /// rhs - lhs of the midpoint inequality; negative beyond slack means violation.
    double margin = 0.0;
};

struct KineticPotentialReport {
    GapReport gap;              // lhs = total spread, rhs = kinetic + potential
    double kinetic_spread = 0.0;
    double potential_spread = 0.0;
    double total_spread = 0.0;
};

// ---------------------------------------------------------------------------
// WeightedObservableSet
// ---------------------------------------------------------------------------

/// Strictly positive weights paired with observables of one common dimension.
class WeightedObservableSet {
public:
    WeightedObservableSet(std::vector<double> weights, std::vector<HermitianObservable> observables)
        : weights_(std::move(weights)), observables_(std::move(observables)) {
        if (weights_.empty() || weights_.size() != observables_.size()) {
            throw ValidationError("WeightedObservableSet: need a nonempty, equal-length weight/observable pairing");
        }
        const Index d = observables_.front().dim();
        double sum = 0.0;
        bool all_below_one = true;
        for (std::size_t i = 0; i < weights_.size(); ++i) {
            if (!(weights_[i] > 0.0)) {
                throw ValidationError("WeightedObservableSet: weight " + std::to_string(i) +
                                      " is not positive");
            }
            if (observables_[i].dim() != d) {
                throw DimensionError("WeightedObservableSet: observable dimensions differ");
            }
            sum += weights_[i];
            all_below_one = all_below_one && weights_[i] < 1.0;
        }
        convex_ = std::abs(sum - 1.0) <= 1e-12 && all_below_one;
    }

    std::size_t size() const { return weights_.size(); }
    Index dim() const { return observables_.front().dim(); }
    std::span<const double> weights() const { return weights_; }
    std::span<const HermitianObservable> observables() const { return observables_; }
    /// True when the weights sum to 1 (within 1e-12) with every weight < 1.
    bool is_convex_combination() const { return convex_; }

private:
    std::vector<double> weights_;
    std::vector<HermitianObservable> observables_;
    bool convex_ = false;
};

namespace detail {

inline HermitianObservable weighted_sum(std::span<const double> weights,
                                        std::span<const HermitianObservable> observables) {
    Eigen::MatrixXcd acc = weights[0] * observables[0].matrix();
    for (std::size_t i = 1; i < observables.size(); ++i) {
        if (observables[i].dim() != observables[0].dim()) {
            throw DimensionError("weighted_sum: observable dimensions differ");
        }
        acc += weights[i] * observables[i].matrix();
    }
    return HermitianObservable(std::move(acc));
}

/// Convex weights for state mixtures: nonnegative, summing to 1. The boundary
/// values 0 and 1 are legal here (a single-state "mixture" has weight 1).
inline void require_convex_weights(std::span<const double> weights) {
    double sum = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0)) {
            throw ValidationError("convex weights must be nonnegative");
        }
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-12) {
        throw ValidationError("convex weights must sum to 1 (got " + std::to_string(sum) + ")");
    }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

/// Delta(A+B) against DeltaA + DeltaB.
inline GapReport sum_uncertainty_gap(const HermitianObservable& a, const HermitianObservable& b,
                                     const StateVector& psi) {
    const double lhs = uncertainty(a + b, psi);
    const double rhs = uncertainty(a, psi) + uncertainty(b, psi);
    return GapReport{lhs, rhs, rhs - lhs};
}

/// Delta(sum_i A_i) against sum_i Delta A_i.
inline GapReport multi_sum_gap(std::span<const HermitianObservable> observables,
                               const StateVector& psi) {
    if (observables.empty()) {
        throw ValidationError("multi_sum_gap: observable sequence is empty");
    }
    Eigen::MatrixXcd acc = observables[0].matrix();
    double rhs = uncertainty(observables[0], psi);
    for (std::size_t i = 1; i < observables.size(); ++i) {
        if (observables[i].dim() != observables[0].dim()) {
            throw DimensionError("multi_sum_gap: observable dimensions differ");
        }
        acc += observables[i].matrix();
        rhs += uncertainty(observables[i], psi);
    }
    const double lhs = uncertainty(HermitianObservable(std::move(acc)), psi);
    return GapReport{lhs, rhs, rhs - lhs};
}

/// Delta(sum_i p_i A_i) against sum_i p_i Delta A_i, p_i > 0.
inline GapReport weighted_sum_gap(const WeightedObservableSet& set, const StateVector& psi) {
    const HermitianObservable combined = detail::weighted_sum(set.weights(), set.observables());
    const double lhs = uncertainty(combined, psi);
    double rhs = 0.0;
    for (std::size_t i = 0; i < set.size(); ++i) {
        rhs += set.weights()[i] * uncertainty(set.observables()[i], psi);
    }
    return GapReport{lhs, rhs, rhs - lhs};
}

/// Midpoint convexity of p -> Delta(sum_i p_i A_i) at fixed observables/state.
///
/// Both weight vectors must be convex combinations over the same observable
/// list (compared by identity of the matrices).
inline MidpointConvexityReport convexity_midpoint_check(const WeightedObservableSet& set_a,
                                                        const WeightedObservableSet& set_b,
                                                        const StateVector& psi) {
    if (!set_a.is_convex_combination() || !set_b.is_convex_combination()) {
        throw ValidationError("convexity_midpoint_check: weights are not convex combinations");
    }
    if (set_a.size() != set_b.size()) {
        throw ValidationError("convexity_midpoint_check: observable lists differ in length");
    }
    for (std::size_t i = 0; i < set_a.size(); ++i) {
        const auto& ma = set_a.observables()[i].matrix();
        const auto& mb = set_b.observables()[i].matrix();
        if (ma.rows() != mb.rows() || (ma - mb).cwiseAbs().maxCoeff() != 0.0) {
            throw ValidationError("convexity_midpoint_check: observable lists differ at index " +
                                  std::to_string(i));
        }
    }
    std::vector<double> mid(set_a.size());
    for (std::size_t i = 0; i < mid.size(); ++i) {
        mid[i] = 0.5 * (set_a.weights()[i] + set_b.weights()[i]);
    }
    const double lhs = uncertainty(detail::weighted_sum(mid, set_a.observables()), psi);
    const double rhs = 0.5 * weighted_sum_gap(set_a, psi).lhs + 0.5 * weighted_sum_gap(set_b, psi).lhs;
    const double margin = rhs - lhs;
    return MidpointConvexityReport{margin >= -tol::kInequalitySlack, margin};
}

/// sum_i p_i Delta(A, psi_i): the uncertainty of A under classical ignorance
/// of which state was prepared.
inline double state_mixture_uncertainty(std::span<const StateVector> states,
                                        std::span<const double> weights,
                                        const HermitianObservable& a) {
    if (states.size() != weights.size() || states.empty()) {
        throw ValidationError("state_mixture_uncertainty: weight/state count mismatch");
    }
    detail::require_convex_weights(weights);
    double acc = 0.0;
    for (std::size_t i = 0; i < states.size(); ++i) {
        acc += weights[i] * uncertainty(a, states[i]);
    }
    return acc;
}

/// The guaranteed-equality family: B = c*A + d*I with c > 0 makes the
/// deviation vectors positively proportional, so the sum relation saturates.
inline GapReport equality_witness(const HermitianObservable& a, const StateVector& psi, double c,
                                  double d) {
    if (!(c > 0.0)) {
        throw ValidationError("equality_witness: c must be positive (got " + std::to_string(c) + ")");
    }
    const HermitianObservable b = (c * a).shifted(d);
    return sum_uncertainty_gap(a, b, psi);
}

// ---------------------------------------------------------------------------
// Kinetic + potential energy demonstration
// ---------------------------------------------------------------------------

/// Three-point finite-difference kinetic matrix on a uniform grid with
/// Dirichlet boundaries, unit mass: diagonal 1/a^2, off-diagonal -1/(2 a^2).
inline HermitianObservable kinetic_matrix(Index grid_size, double grid_spacing) {
    if (grid_size < 1 || !(grid_spacing > 0.0)) {
        throw ValidationError("kinetic_matrix: need grid_size >= 1 and spacing > 0");
    }
    const double inv_a2 = 1.0 / (grid_spacing * grid_spacing);
    Eigen::MatrixXcd t = Eigen::MatrixXcd::Zero(grid_size, grid_size);
    for (Index j = 0; j < grid_size; ++j) {
        t(j, j) = Complex(inv_a2, 0.0);
        if (j + 1 < grid_size) {
            t(j, j + 1) = Complex(-0.5 * inv_a2, 0.0);
            t(j + 1, j) = Complex(-0.5 * inv_a2, 0.0);
        }
    }
    return HermitianObservable(std::move(t));
}

/// DeltaH <= DeltaT + DeltaV on a discretized line.
inline KineticPotentialReport kinetic_potential_demo(Index grid_size, double grid_spacing,
                                                     std::span<const double> potential_profile,
                                                     const StateVector& psi) {
    if (static_cast<Index>(potential_profile.size()) != grid_size || psi.dim() != grid_size) {
        throw DimensionError("kinetic_potential_demo: grid, profile, and state sizes must agree");
    }
    const HermitianObservable t = kinetic_matrix(grid_size, grid_spacing);
    const HermitianObservable v = diagonal_observable(
        Eigen::Map<const Eigen::VectorXd>(potential_profile.data(), grid_size));
    const GapReport gap = sum_uncertainty_gap(t, v, psi);
    return KineticPotentialReport{gap, uncertainty(t, psi), uncertainty(v, psi), gap.lhs};
}

}  // namespace quncert

#endif  // QUNCERT_SUM_RELATION_HPP
