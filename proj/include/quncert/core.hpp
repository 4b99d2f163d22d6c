/**
 * Copyright 2026, quncert developers.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE file in the root directory of this source tree.
 */

#ifndef QUNCERT_CORE_HPP
#define QUNCERT_CORE_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>

#include <Eigen/Dense>

namespace quncert {

using Complex = std::complex<double>;
using Index = Eigen::Index;

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

/// Mismatched dimensions between states and observables.
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Input rejected at construction (normalization, Hermiticity, bad argument).
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A resource guard refused the request (never a silent truncation).
class ResourceGuardError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Numerical corruption detected mid-computation.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Evaluation requested at a point where the quantity is indeterminate.
class SingularPointError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Tolerance policy
// ---------------------------------------------------------------------------

namespace tol {

/// State norm must match 1 within this absolute tolerance.
inline constexpr double kNorm = 1e-12;
/// Per-entry Hermiticity residual allowed at construction.
inline constexpr double kHermitian = 1e-12;
/// Largest imaginary part tolerated in a raw expectation value.
inline constexpr double kImaginary = 1e-10;
/// Variances above this floor are clamped to zero; below it they error.
inline constexpr double kVarianceFloor = -1e-12;
/// Additive slack granted to every inequality check.
inline constexpr double kInequalitySlack = 1e-10;

/// Equality tolerance scaled to the larger compared magnitude.
inline double equality(double scale) {
    return std::max(1e-10, 1e-9 * std::abs(scale));
}

}  // namespace tol

// ---------------------------------------------------------------------------
// StateVector
// ---------------------------------------------------------------------------

/// Normalized pure state on a finite-dimensional Hilbert space.
///
/// Immutable after construction; all operations on it are pure functions and
/// safe to call concurrently.
class StateVector {
public:
    explicit StateVector(Eigen::VectorXcd amplitudes) : amp_(std::move(amplitudes)) {
        if (amp_.size() < 1) {
            throw ValidationError("StateVector requires dim >= 1");
        }
        const double norm_err = std::abs(amp_.norm() - 1.0);
        if (!(norm_err <= tol::kNorm)) {
            throw ValidationError("StateVector amplitudes are not normalized (|norm - 1| = " +
                                  std::to_string(norm_err) + ")");
        }
    }

    /// Rescales an arbitrary nonzero vector to unit norm, then validates.
    static StateVector normalized(Eigen::VectorXcd raw) {
        const double n = raw.norm();
        if (!(n > 0.0) || !std::isfinite(n)) {
            throw ValidationError("cannot normalize a zero or non-finite vector");
        }
        raw /= n;
        return StateVector(std::move(raw));
    }

    Index dim() const { return amp_.size(); }
    const Eigen::VectorXcd& amplitudes() const { return amp_; }

private:
    Eigen::VectorXcd amp_;
};

/// Computational basis state |k> in the given dimension.
inline StateVector basis_state(Index dim, Index k) {
    if (dim < 1 || k < 0 || k >= dim) {
        throw ValidationError("basis_state: need 0 <= k < dim");
    }
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
    v(k) = Complex(1.0, 0.0);
    return StateVector(std::move(v));
}

// ---------------------------------------------------------------------------
// HermitianObservable
// ---------------------------------------------------------------------------

/// Dense self-adjoint matrix. Hermiticity is validated once, at construction;
/// the arithmetic below preserves it exactly, so operations skip revalidation.
class HermitianObservable {
public:
    explicit HermitianObservable(Eigen::MatrixXcd entries) : mat_(std::move(entries)) {
        if (mat_.rows() < 1 || mat_.rows() != mat_.cols()) {
            throw ValidationError("HermitianObservable requires a square matrix, dim >= 1");
        }
        const double residual = (mat_ - mat_.adjoint()).cwiseAbs().maxCoeff();
        if (!(residual <= tol::kHermitian)) {
            throw ValidationError("matrix is not Hermitian (max |M - M^dagger| = " +
                                  std::to_string(residual) + ")");
        }
    }

    Index dim() const { return mat_.rows(); }
    const Eigen::MatrixXcd& matrix() const { return mat_; }

    /// A + c*I for real c.
    HermitianObservable shifted(double c) const {
        Eigen::MatrixXcd m = mat_;
        m.diagonal().array() += Complex(c, 0.0);
        return HermitianObservable(Unchecked{}, std::move(m));
    }

    friend HermitianObservable operator+(const HermitianObservable& a, const HermitianObservable& b) {
        require_same_dim(a, b);
        return HermitianObservable(Unchecked{}, a.mat_ + b.mat_);
    }
    friend HermitianObservable operator-(const HermitianObservable& a, const HermitianObservable& b) {
        require_same_dim(a, b);
        return HermitianObservable(Unchecked{}, a.mat_ - b.mat_);
    }
    friend HermitianObservable operator*(double lambda, const HermitianObservable& a) {
        return HermitianObservable(Unchecked{}, lambda * a.mat_);
    }
    friend HermitianObservable operator-(const HermitianObservable& a) {
        return HermitianObservable(Unchecked{}, -a.mat_);
    }

private:
    struct Unchecked {};
    HermitianObservable(Unchecked, Eigen::MatrixXcd entries) : mat_(std::move(entries)) {}

    static void require_same_dim(const HermitianObservable& a, const HermitianObservable& b) {
        if (a.dim() != b.dim()) {
            throw DimensionError("observable dimensions differ: " + std::to_string(a.dim()) +
                                 " vs " + std::to_string(b.dim()));
        }
    }

    Eigen::MatrixXcd mat_;
};

inline HermitianObservable identity(Index dim) {
    return HermitianObservable(Eigen::MatrixXcd::Identity(dim, dim));
}

/// Diagonal observable from a real profile.
inline HermitianObservable diagonal_observable(const Eigen::VectorXd& values) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(values.size(), values.size());
    m.diagonal() = values.cast<Complex>();
    return HermitianObservable(std::move(m));
}

inline HermitianObservable pauli_x() {
    Eigen::MatrixXcd m(2, 2);
    m << Complex(0, 0), Complex(1, 0), Complex(1, 0), Complex(0, 0);
    return HermitianObservable(std::move(m));
}

inline HermitianObservable pauli_y() {
    Eigen::MatrixXcd m(2, 2);
    m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
    return HermitianObservable(std::move(m));
}

inline HermitianObservable pauli_z() {
    Eigen::MatrixXcd m(2, 2);
    m << Complex(1, 0), Complex(0, 0), Complex(0, 0), Complex(-1, 0);
    return HermitianObservable(std::move(m));
}

// ---------------------------------------------------------------------------
// Expectation, variance, uncertainty
// ---------------------------------------------------------------------------

namespace detail {

inline void require_matching(const HermitianObservable& a, const StateVector& psi) {
    if (a.dim() != psi.dim()) {
        throw DimensionError("observable dim " + std::to_string(a.dim()) +
                             " does not match state dim " + std::to_string(psi.dim()));
    }
}

/// Real part of <psi|phi> with the imaginary-residual check applied.
inline double checked_real(Complex inner) {
    if (!(std::abs(inner.imag()) <= tol::kImaginary)) {
        throw NumericalError("expectation has non-negligible imaginary part " +
                             std::to_string(inner.imag()));
    }
    return inner.real();
}

}  // namespace detail

/// <psi|A|psi>.
inline double expectation(const HermitianObservable& a, const StateVector& psi) {
    detail::require_matching(a, psi);
    const Complex raw = psi.amplitudes().dot(a.matrix() * psi.amplitudes());
    return detail::checked_real(raw);
}

/// <A^2> - <A>^2, clamped at tiny negative roundoff.
///
/// Uses <A^2> = ||A psi||^2, which keeps the second moment exactly
/// nonnegative before the cancellation.
inline double variance(const HermitianObservable& a, const StateVector& psi) {
    detail::require_matching(a, psi);
    const Eigen::VectorXcd phi = a.matrix() * psi.amplitudes();
    const double mean = detail::checked_real(psi.amplitudes().dot(phi));
    const double second = phi.squaredNorm();
    const double var = second - mean * mean;
    if (var < tol::kVarianceFloor) {
        throw NumericalError("variance " + std::to_string(var) +
                             " is below the roundoff floor; inputs are corrupted");
    }
    return std::max(var, 0.0);
}

/// Uncertainty (standard deviation) of A in psi.
inline double uncertainty(const HermitianObservable& a, const StateVector& psi) {
    return std::sqrt(variance(a, psi));
}

/// (1/2)|<psi|[A,B]|psi>|, the right-hand side of the Robertson relation.
inline double commutator_expectation(const HermitianObservable& a, const HermitianObservable& b,
                                     const StateVector& psi) {
    detail::require_matching(a, psi);
    detail::require_matching(b, psi);
    // <AB> = (A psi)^dagger (B psi); <[A,B]> = 2i Im<AB>.
    const Complex ab = (a.matrix() * psi.amplitudes()).dot(b.matrix() * psi.amplitudes());
    return std::abs(ab.imag());
}

// ---------------------------------------------------------------------------
// Seeded sampling
// ---------------------------------------------------------------------------

/// Identifies one reproducible random stream. Identical (seed, stream) pairs
/// yield identical sample sequences across runs and schedules, so parallel
/// trials must derive streams from trial indices, never from thread ids.
struct RandomSource {
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;

    RandomSource with_stream(std::uint64_t s) const { return RandomSource{seed, s}; }
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace detail

/// Draws standard normal variates for one (seed, stream) pair.
class RandomStream {
public:
    explicit RandomStream(RandomSource src) {
        std::uint64_t x = src.seed;
        const std::uint64_t a = detail::splitmix64(x);
        x ^= 0xd1b54a32d192ed03ULL * (src.stream + 1);
        const std::uint64_t b = detail::splitmix64(x);
        std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                          static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
        engine_.seed(seq);
    }

    double normal() { return normal_(engine_); }

    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(engine_);
    }

    Complex complex_normal() {
        const double re = normal();
        const double im = normal();
        return Complex(re, im);
    }

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_;
};

/// State with i.i.d. complex Gaussian amplitudes, normalized (Haar measure).
inline StateVector sample_haar_state(Index dim, RandomStream& g) {
    if (dim < 1) {
        throw ValidationError("sample_haar_state: dim must be >= 1");
    }
    Eigen::VectorXcd v(dim);
    for (Index i = 0; i < dim; ++i) {
        v(i) = g.complex_normal();
    }
    return StateVector::normalized(std::move(v));
}

inline StateVector sample_haar_state(Index dim, RandomSource src) {
    RandomStream g(src);
    return sample_haar_state(dim, g);
}

/// (G + G^dagger)/2 for G with i.i.d. complex Gaussian entries (GUE-style).
inline HermitianObservable sample_hermitian(Index dim, RandomStream& g) {
    if (dim < 1) {
        throw ValidationError("sample_hermitian: dim must be >= 1");
    }
    Eigen::MatrixXcd m(dim, dim);
    for (Index r = 0; r < dim; ++r) {
        for (Index c = 0; c < dim; ++c) {
            m(r, c) = g.complex_normal();
        }
    }
    return HermitianObservable(0.5 * (m + m.adjoint().eval()));
}

inline HermitianObservable sample_hermitian(Index dim, RandomSource src) {
    RandomStream g(src);
    return sample_hermitian(dim, g);
}

}  // namespace quncert

#endif  // QUNCERT_CORE_HPP
