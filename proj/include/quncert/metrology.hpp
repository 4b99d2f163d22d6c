/**
 * Copyright 2026, quncert developers.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE file in the root directory of this source tree.
 */

#ifndef QUNCERT_METROLOGY_HPP
#define QUNCERT_METROLOGY_HPP

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include <Eigen/Dense>

#include "quncert/core.hpp"

namespace quncert {

// ---------------------------------------------------------------------------
// Probe state
// ---------------------------------------------------------------------------

/// N-qubit probe cos(2^(N-1) theta)|00...0> - i sin(2^(N-1) theta)|11...1>,
/// stored as its two branch amplitudes. The qubit count is capped at 52 so
/// the phase rate 2^(N-1) stays exactly representable.
class TwoBranchState {
public:
    TwoBranchState(int qubits, double theta) : qubits_(qubits), theta_(theta) {
        if (qubits < 1 || qubits > 52) {
            throw ValidationError("TwoBranchState: qubits must be in [1, 52], got " +
                                  std::to_string(qubits));
        }
        const double phase = phase_rate() * theta;
        branch0_ = Complex(std::cos(phase), 0.0);
        branch1_ = Complex(0.0, -std::sin(phase));
        const double norm2 = std::norm(branch0_) + std::norm(branch1_);
        if (std::abs(norm2 - 1.0) > 1e-12) {
            throw NumericalError("TwoBranchState branch amplitudes lost normalization");
        }
    }

    int qubits() const { return qubits_; }
    double theta() const { return theta_; }
    std::complex<double> branch0() const { return branch0_; }
    std::complex<double> branch1() const { return branch1_; }

    /// 2^(N-1): the angular rate at which theta winds the branch phase.
    double phase_rate() const { return std::ldexp(1.0, qubits_ - 1); }

    /// Full 2^N amplitude vector; only for small N (dense oracle use).
    Eigen::VectorXcd dense_amplitudes() const {
        if (qubits_ > 12) {
            throw ResourceGuardError("dense_amplitudes: 2^" + std::to_string(qubits_) +
                                     " exceeds the dense limit of 4096; refusing");
        }
        const Index dim = Index{1} << qubits_;
        Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
        v(0) = branch0_;
        v(dim - 1) = branch1_;
        return v;
    }

private:
    int qubits_;
    double theta_;
    Complex branch0_;
    Complex branch1_;
};

inline TwoBranchState build_probe_state(int qubits, double theta) {
    return TwoBranchState(qubits, theta);
}

/// |psi_H(theta)>^(x)M: M uncorrelated copies of the N-qubit probe.
class ProbeEnsemble {
public:
    ProbeEnsemble(TwoBranchState probe, int copies) : probe_(std::move(probe)), copies_(copies) {
        if (copies < 1) {
            throw ValidationError("ProbeEnsemble: copies must be >= 1");
        }
    }

    const TwoBranchState& probe() const { return probe_; }
    int copies() const { return copies_; }

private:
    TwoBranchState probe_;
    int copies_;
};

// ---------------------------------------------------------------------------
// Measurement statistics
// ---------------------------------------------------------------------------

/// Central difference (f(theta+h) - f(theta-h)) / (2h).
template <typename F>
double finite_difference_derivative(F&& f, double theta, double step) {
    if (!(step > 0.0)) {
        throw ValidationError("finite_difference_derivative: step must be positive");
    }
    return (f(theta + step) - f(theta - step)) / (2.0 * step);
}

/// Default phase-frequency-scaled step 1e-6 / 2^(N-1).
inline double default_phase_step(int qubits) { return std::ldexp(1e-6, 1 - qubits); }

/// Mean, spread, and theta-derivative of one observable on the probe family.
/// The analytic derivative is cross-checked against a central difference of
/// the same mean function at construction.
struct MeasurementStats {
    double mean = 0.0;
    double spread = 0.0;
    double derivative = 0.0;
    double derivative_numeric = 0.0;
    double theta = 0.0;  // evaluation point, kept for error reporting
};

namespace detail {

template <typename MeanFn>
MeasurementStats make_stats(double mean, double spread, double derivative, MeanFn&& mean_fn,
                            double theta, double step) {
    const double numeric =
        finite_difference_derivative(std::forward<MeanFn>(mean_fn), theta, step);
    const double disagreement = std::abs(derivative - numeric);
    if (disagreement > std::max(1e-6, 1e-6 * std::abs(derivative))) {
        throw NumericalError("analytic and finite-difference derivatives disagree by " +
                             std::to_string(disagreement) + " at theta = " +
                             std::to_string(theta));
    }
    return MeasurementStats{mean, spread, derivative, numeric, theta};
}

}  // namespace detail

/// X = (x)_i |0><0|_i, the projector onto |00...0>.
inline MeasurementStats product_projector_stats(const TwoBranchState& probe) {
    const double w = probe.phase_rate();
    const double theta = probe.theta();
    const double c = std::cos(w * theta);
    const double mean = c * c;
    const double spread = 0.5 * std::abs(std::sin(2.0 * w * theta));
    const double derivative = -w * std::sin(2.0 * w * theta);
    auto mean_fn = [w](double t) {
        const double ct = std::cos(w * t);
        return ct * ct;
    };
    return detail::make_stats(mean, spread, derivative, mean_fn, theta,
                              default_phase_step(probe.qubits()));
}

/// P_S = sum_i |0><0|_i measured jointly.
inline MeasurementStats sum_projector_stats(const TwoBranchState& probe) {
    const double n = probe.qubits();
    const double w = probe.phase_rate();
    const double theta = probe.theta();
    const double c = std::cos(w * theta);
    const double mean = n * c * c;
    const double spread = 0.5 * n * std::abs(std::sin(2.0 * w * theta));
    const double derivative = -n * w * std::sin(2.0 * w * theta);
    auto mean_fn = [n, w](double t) {
        const double ct = std::cos(w * t);
        return n * ct * ct;
    };
    return detail::make_stats(mean, spread, derivative, mean_fn, theta,
                              default_phase_step(probe.qubits()));
}

/// The same projectors measured one site at a time: sum_i <P_i> and
/// sum_i Delta P_i. On this state family every site contributes identically,
/// and the totals coincide with the joint-measurement statistics -- the sum
/// uncertainty relation saturates here.
inline MeasurementStats individual_projector_stats(const TwoBranchState& probe) {
    return sum_projector_stats(probe);
}

/// Pi_S = sum over the M probe copies of the per-copy product projector.
inline MeasurementStats ensemble_sum_stats(const ProbeEnsemble& ensemble) {
    const double m = ensemble.copies();
    const double w = ensemble.probe().phase_rate();
    const double theta = ensemble.probe().theta();
    const double c = std::cos(w * theta);
    const double mean = m * c * c;
    const double spread = 0.5 * std::sqrt(m) * std::abs(std::sin(2.0 * w * theta));
    const double derivative = -m * w * std::sin(2.0 * w * theta);
    auto mean_fn = [m, w](double t) {
        const double ct = std::cos(w * t);
        return m * ct * ct;
    };
    return detail::make_stats(mean, spread, derivative, mean_fn, theta,
                              default_phase_step(ensemble.probe().qubits()));
}

// ---------------------------------------------------------------------------
// Precision and the Mandelstam-Tamm bound
// ---------------------------------------------------------------------------

struct PrecisionReport {
    double delta_theta = 0.0;
    /// 1/(2 DeltaH_eff); absent unless a generator spread was supplied.
    std::optional<double> mt_lower_bound;
    MeasurementStats stats;
};

/// Error-propagation precision delta_theta = spread / |d<X>/d theta|.
///
/// Where sin(2^N theta) = 0 both spread and derivative vanish and the ratio
/// is indeterminate; that is reported as an explicit error, never a limit.
inline PrecisionReport precision(const MeasurementStats& stats) {
    if (std::abs(stats.derivative) <= 1e-12) {
        throw SingularPointError("precision is indeterminate at theta = " +
                                 std::to_string(stats.theta) +
                                 ": spread and derivative both vanish (sin(2^N theta) = 0)");
    }
    return PrecisionReport{stats.spread / std::abs(stats.derivative), std::nullopt, stats};
}

/// Spread of the effective generator restricted to the two-branch subspace,
/// where the theta-dependence is a rotation at angular frequency 2^(N-1).
/// The generator commutes with itself, so the spread is theta-independent.
inline double effective_generator_spread(const TwoBranchState& probe) {
    return probe.phase_rate();
}

/// 1/(2 DeltaH_eff) = 1/2^N, finite at every theta including theta = 0.
inline double mt_lower_bound(const TwoBranchState& probe) {
    return std::ldexp(1.0, -probe.qubits());
}

/// Checks Delta X * Delta H_eff >= (1/2)|d<X>/d theta| and that the
/// propagated precision respects the Mandelstam-Tamm floor.
inline PrecisionReport mt_bound_check(const TwoBranchState& probe, const MeasurementStats& stats) {
    const double dh = effective_generator_spread(probe);
    if (stats.spread * dh < 0.5 * std::abs(stats.derivative) - 1e-9) {
        throw NumericalError("Mandelstam-Tamm product inequality violated at theta = " +
                             std::to_string(stats.theta));
    }
    PrecisionReport report = precision(stats);
    report.mt_lower_bound = mt_lower_bound(probe);
    if (report.delta_theta < *report.mt_lower_bound - 1e-12) {
        throw NumericalError("precision fell below the Mandelstam-Tamm floor at theta = " +
                             std::to_string(stats.theta));
    }
    return report;
}

// ---------------------------------------------------------------------------
// Resource accounting
// ---------------------------------------------------------------------------

struct ResourcePrecision {
    double ensemble_delta_theta = 0.0;      // 1/(sqrt(M) 2^N)
    double single_block_delta_theta = 0.0;  // 1/2^K at K = MN qubits
    double identity_residual = 0.0;         // relative, against the K-form identity
};

/// Compares M blocks of N qubits against one block of K = MN qubits, and
/// verifies the algebraic identity between the two normalizations:
/// 1/(sqrt(M) 2^N) = sqrt(N) 2^(K(M-1)/M) / (sqrt(K) 2^K).
inline ResourcePrecision resource_normalized_precision(int copies, int qubits) {
    if (copies < 1 || qubits < 1) {
        throw ValidationError("resource_normalized_precision: need copies >= 1 and qubits >= 1");
    }
    const std::int64_t k = static_cast<std::int64_t>(copies) * qubits;
    if (k > 52) {
        throw ResourceGuardError("resource_normalized_precision: K = MN = " + std::to_string(k) +
                                 " exceeds 52; 2^K would not be exactly representable");
    }
    const double m = copies;
    const double n = qubits;
    const double ensemble = 1.0 / (std::sqrt(m) * std::ldexp(1.0, qubits));
    const double single_block = std::ldexp(1.0, -static_cast<int>(k));
    const double kd = static_cast<double>(k);
    const double k_form = std::sqrt(n) * std::exp2(kd * (m - 1.0) / m) / (std::sqrt(kd) * std::exp2(kd));
    const double residual = std::abs(ensemble - k_form) / ensemble;
    if (residual > 1e-12) {
        throw NumericalError("resource-normalized identity residual " + std::to_string(residual) +
                             " exceeds 1e-12 at (M, N) = (" + std::to_string(copies) + ", " +
                             std::to_string(qubits) + ")");
    }
    if (copies >= 2 && !(ensemble > single_block)) {
        throw NumericalError("ensemble precision failed to exceed the single-block value at (M, N) = (" +
                             std::to_string(copies) + ", " + std::to_string(qubits) + ")");
    }
    return ResourcePrecision{ensemble, single_block, residual};
}

}  // namespace quncert

#endif  // QUNCERT_METROLOGY_HPP
