/**
 * Copyright 2026, quncert developers.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE file in the root directory of this source tree.
 */

#ifndef QUNCERT_DYNAMICS_HPP
#define QUNCERT_DYNAMICS_HPP

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "quncert/core.hpp"

namespace quncert {

/// Largest dimension for which unitary evolution by dense diagonalization is
/// attempted.
inline constexpr Index kEvolveDimLimit = 512;

// ---------------------------------------------------------------------------
// Fubini-Study geometry
// ---------------------------------------------------------------------------

/// Projective-space distance between pure states, insensitive to the global
/// phase of either argument.
struct OverlapDistance {
    double value = 0.0;  // in [0, 1]
};

inline OverlapDistance fubini_study_distance(const StateVector& psi1, const StateVector& psi2) {
    if (psi1.dim() != psi2.dim()) {
        throw DimensionError("fubini_study_distance: state dimensions differ");
    }
    const double overlap2 = std::norm(psi1.amplitudes().dot(psi2.amplitudes()));
    // 1e-15-scale roundoff can push the radicand marginally outside [0, 1].
    const double radicand = std::clamp(1.0 - overlap2, 0.0, 1.0);
    return OverlapDistance{std::sqrt(radicand)};
}

// ---------------------------------------------------------------------------
// Quantum speed
// ---------------------------------------------------------------------------

/// Speed of Fubini-Study transport under H: v = DeltaH (hbar = 1).
inline double quantum_speed(const HermitianObservable& h, const StateVector& psi) {
    return uncertainty(h, psi);
}

/// exp(-i H t) psi via spectral decomposition; exact up to diagonalization
/// accuracy, no truncation order to tune.
inline StateVector evolve(const HermitianObservable& h, const StateVector& psi, double t) {
    detail::require_matching(h, psi);
    if (h.dim() > kEvolveDimLimit) {
        throw ResourceGuardError("evolve: dim " + std::to_string(h.dim()) +
                                 " exceeds the dense diagonalization limit " +
                                 std::to_string(kEvolveDimLimit));
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h.matrix());
    if (solver.info() != Eigen::Success) {
        throw NumericalError("evolve: eigendecomposition failed");
    }
    const Eigen::VectorXcd in_eigenbasis = solver.eigenvectors().adjoint() * psi.amplitudes();
    Eigen::VectorXcd phased(in_eigenbasis.size());
    for (Index i = 0; i < in_eigenbasis.size(); ++i) {
        phased(i) = std::polar(1.0, -solver.eigenvalues()(i) * t) * in_eigenbasis(i);
    }
    return StateVector::normalized(solver.eigenvectors() * phased);
}

/// Finite-time estimate of the speed: FS distance travelled in dt, over dt.
/// Converges to quantum_speed at second order in dt.
inline double numeric_speed(const HermitianObservable& h, const StateVector& psi, double dt) {
    if (!(dt > 0.0)) {
        throw ValidationError("numeric_speed: dt must be positive");
    }
    const StateVector moved = evolve(h, psi, dt);
    return fubini_study_distance(psi, moved).value / dt;
}

// ---------------------------------------------------------------------------
// Sub-additivity under Hamiltonian composition
// ---------------------------------------------------------------------------

struct SpeedReport {
    double combined = 0.0;  // v under H1 + sign*H2
    double v1 = 0.0;
    double v2 = 0.0;
    double slack = 0.0;  // v1 + v2 - combined
};

/// v(H1 +/- H2) against v(H1) + v(H2). Uncertainty is even in its operator
/// argument, so both signs obey the same bound.
inline SpeedReport speed_subadditivity(const HermitianObservable& h1, const HermitianObservable& h2,
                                       const StateVector& psi, int sign) {
    if (sign != 1 && sign != -1) {
        throw ValidationError("speed_subadditivity: sign must be +1 or -1");
    }
    const HermitianObservable combined_h = sign == 1 ? h1 + h2 : h1 - h2;
    const double combined = quantum_speed(combined_h, psi);
    const double v1 = quantum_speed(h1, psi);
    const double v2 = quantum_speed(h2, psi);
    return SpeedReport{combined, v1, v2, v1 + v2 - combined};
}

// ---------------------------------------------------------------------------
// Velocity operator
// ---------------------------------------------------------------------------

/// Heisenberg velocity (1/i)[x, H]; i times an anti-Hermitian commutator, so
/// the result is Hermitian.
inline HermitianObservable velocity_operator(const HermitianObservable& x,
                                             const HermitianObservable& h) {
    if (x.dim() != h.dim()) {
        throw DimensionError("velocity_operator: operator dimensions differ");
    }
    const Eigen::MatrixXcd commutator = x.matrix() * h.matrix() - h.matrix() * x.matrix();
    return HermitianObservable(Complex(0.0, -1.0) * commutator);
}

struct VelocityBoundReport {
    double velocity_mean_abs = 0.0;  // |<v>| under H1 + H2
    double bound = 0.0;              // 2 Deltax (DeltaH1 + DeltaH2)
    double margin = 0.0;             // bound - velocity_mean_abs
    double robertson_bound = 0.0;    // 2 Deltax Delta(H1 + H2), the chained step
    double robertson_margin = 0.0;
};

/// |<v>| <= 2 Deltax (DeltaH1 + DeltaH2), checked together with the
/// intermediate Robertson step |<v>| <= 2 Deltax Delta(H1+H2).
inline VelocityBoundReport velocity_bound_check(const HermitianObservable& x,
                                                const HermitianObservable& h1,
                                                const HermitianObservable& h2,
                                                const StateVector& psi) {
    const HermitianObservable h = h1 + h2;
    const double value = std::abs(expectation(velocity_operator(x, h), psi));
    const double dx = uncertainty(x, psi);
    const double robertson_bound = 2.0 * dx * uncertainty(h, psi);
    const double bound = 2.0 * dx * (uncertainty(h1, psi) + uncertainty(h2, psi));
    return VelocityBoundReport{value, bound, bound - value, robertson_bound,
                               robertson_bound - value};
}

}  // namespace quncert

#endif  // QUNCERT_DYNAMICS_HPP
