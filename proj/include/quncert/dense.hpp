/**
 * Copyright 2026, quncert developers.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE file in the root directory of this source tree.
 */

#ifndef QUNCERT_DENSE_HPP
#define QUNCERT_DENSE_HPP

#include <bit>
#include <cstdint>
#include <string>

#include <Eigen/Dense>

#include "quncert/core.hpp"

namespace quncert::dense {

/// Largest total dimension any dense tensor-product object may take.
inline constexpr std::int64_t kDimLimit = 4096;

/// d^copies with overflow protection against the dense guard.
inline std::int64_t tensor_dim(Index local_dim, std::int64_t copies) {
    if (local_dim < 1 || copies < 1) {
        throw ValidationError("tensor_dim: need local_dim >= 1 and copies >= 1");
    }
    std::int64_t total = 1;
    for (std::int64_t i = 0; i < copies; ++i) {
        if (total > kDimLimit / local_dim) {
            return kDimLimit + 1;  // saturates; callers only compare against the guard
        }
        total *= local_dim;
    }
    return total;
}

inline void require_within_guard(Index local_dim, std::int64_t copies, const std::string& what) {
    if (tensor_dim(local_dim, copies) > kDimLimit) {
        throw ResourceGuardError(what + ": dense representation needs d^N = " +
                                 std::to_string(local_dim) + "^" + std::to_string(copies) +
                                 " > " + std::to_string(kDimLimit) + "; refusing");
    }
}

inline Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Index r = 0; r < a.rows(); ++r) {
        for (Index c = 0; c < a.cols(); ++c) {
            out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
        }
    }
    return out;
}

/// |psi>^(x)N as a d^N amplitude vector.
inline Eigen::VectorXcd kron_power(const Eigen::VectorXcd& local, std::int64_t copies) {
    require_within_guard(local.size(), copies, "kron_power");
    Eigen::VectorXcd out = local;
    for (std::int64_t i = 1; i < copies; ++i) {
        Eigen::VectorXcd next(out.size() * local.size());
        for (Index r = 0; r < out.size(); ++r) {
            next.segment(r * local.size(), local.size()) = out(r) * local;
        }
        out.swap(next);
    }
    return out;
}

/// sum_i I (x) ... (x) A (x) ... (x) I, materialized as a d^N x d^N matrix.
inline Eigen::MatrixXcd site_sum(const Eigen::MatrixXcd& local, std::int64_t sites) {
    const Index d = local.rows();
    require_within_guard(d, sites, "site_sum");
    const std::int64_t total = tensor_dim(d, sites);
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(total, total);
    std::int64_t trailing = total / d;  // dimension of everything after site 0
    std::int64_t leading = 1;
    for (std::int64_t site = 0; site < sites; ++site) {
        for (std::int64_t hi = 0; hi < leading; ++hi) {
            for (Index a = 0; a < d; ++a) {
                for (Index b = 0; b < d; ++b) {
                    for (std::int64_t lo = 0; lo < trailing; ++lo) {
                        const std::int64_t row = (hi * d + a) * trailing + lo;
                        const std::int64_t col = (hi * d + b) * trailing + lo;
                        out(row, col) += local(a, b);
                    }
                }
            }
        }
        leading *= d;
        trailing /= d;
    }
    return out;
}

/// Projector |0><0| on one qubit site, as a dense 2^qubits matrix.
inline Eigen::MatrixXcd site_projector(int qubits, int site) {
    if (qubits < 1 || qubits > 12 || site < 0 || site >= qubits) {
        throw ValidationError("site_projector: need 1 <= qubits <= 12 and 0 <= site < qubits");
    }
    const std::int64_t total = std::int64_t{1} << qubits;
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(total, total);
    const std::int64_t bit = std::int64_t{1} << (qubits - 1 - site);
    for (std::int64_t b = 0; b < total; ++b) {
        if ((b & bit) == 0) {
            out(b, b) = Complex(1.0, 0.0);
        }
    }
    return out;
}

/// (x)_i |0><0|_i = projector onto |00...0>.
inline Eigen::MatrixXcd product_projector(int qubits) {
    if (qubits < 1 || qubits > 12) {
        throw ValidationError("product_projector: need 1 <= qubits <= 12");
    }
    const std::int64_t total = std::int64_t{1} << qubits;
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(total, total);
    out(0, 0) = Complex(1.0, 0.0);
    return out;
}

/// sum_i |0><0|_i; diagonal entry counts the zero bits of the basis index.
inline Eigen::MatrixXcd sum_projector(int qubits) {
    if (qubits < 1 || qubits > 12) {
        throw ValidationError("sum_projector: need 1 <= qubits <= 12");
    }
    const std::int64_t total = std::int64_t{1} << qubits;
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(total, total);
    for (std::int64_t b = 0; b < total; ++b) {
        const int ones = std::popcount(static_cast<std::uint64_t>(b));
        out(b, b) = Complex(static_cast<double>(qubits - ones), 0.0);
    }
    return out;
}

}  // namespace quncert::dense

#endif  // QUNCERT_DENSE_HPP
