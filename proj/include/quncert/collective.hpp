/**
 * Copyright 2026, quncert developers.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE file in the root directory of this source tree.
 */

#ifndef QUNCERT_COLLECTIVE_HPP
#define QUNCERT_COLLECTIVE_HPP

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>

#include "quncert/core.hpp"
#include "quncert/dense.hpp"

namespace quncert {

// ---------------------------------------------------------------------------
// Structured N-copy types
// ---------------------------------------------------------------------------

/// |psi>^(x)N, stored as the local state plus a copy count. Nothing of size
/// d^N is ever materialized on this path, so N can be as large as int64
/// allows.
class ProductState {
public:
    ProductState(StateVector local, std::int64_t copies)
        : local_(std::move(local)), copies_(copies) {
        if (copies_ < 1) {
            throw ValidationError("ProductState: copies must be >= 1");
        }
    }

    const StateVector& local() const { return local_; }
    std::int64_t copies() const { return copies_; }

private:
    StateVector local_;
    std::int64_t copies_;
};

/// A_S = sum_i I (x) ... (x) A (x) ... (x) I with the same A at every site.
class SiteSumObservable {
public:
    SiteSumObservable(HermitianObservable local_term, std::int64_t sites)
        : local_(std::move(local_term)), sites_(sites) {
        if (sites_ < 1) {
            throw ValidationError("SiteSumObservable: sites must be >= 1");
        }
    }

    const HermitianObservable& local_term() const { return local_; }
    std::int64_t sites() const { return sites_; }

private:
    HermitianObservable local_;
    std::int64_t sites_;
};

namespace detail {

inline void require_compatible(const SiteSumObservable& obs, const ProductState& state) {
    if (obs.local_term().dim() != state.local().dim()) {
        throw DimensionError("site-sum local dim " + std::to_string(obs.local_term().dim()) +
                             " does not match product-state local dim " +
                             std::to_string(state.local().dim()));
    }
    if (obs.sites() != state.copies()) {
        throw DimensionError("site count " + std::to_string(obs.sites()) +
                             " does not match copy count " + std::to_string(state.copies()));
    }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Structured closed forms
// ---------------------------------------------------------------------------

/// <A_S> = N <A> on a product state.
inline double site_sum_expectation(const SiteSumObservable& obs, const ProductState& state) {
    detail::require_compatible(obs, state);
    return static_cast<double>(state.copies()) * expectation(obs.local_term(), state.local());
}

/// Delta A_S = sqrt(N) Delta A; cross-site covariances vanish on a product
/// state, so the variance of the sum is the sum of the variances.
inline double site_sum_uncertainty(const SiteSumObservable& obs, const ProductState& state) {
    detail::require_compatible(obs, state);
    return std::sqrt(static_cast<double>(state.copies())) *
           uncertainty(obs.local_term(), state.local());
}

/// sum_i Delta A_i = N Delta A: the error budget of N separate measurements.
inline double individual_sum_uncertainty(const SiteSumObservable& obs, const ProductState& state) {
    detail::require_compatible(obs, state);
    return static_cast<double>(state.copies()) * uncertainty(obs.local_term(), state.local());
}

// ---------------------------------------------------------------------------
// Dense cross-check
// ---------------------------------------------------------------------------

struct DenseCrosscheckReport {
    double structured = 0.0;
    double dense = 0.0;
    double residual = 0.0;   // |dense - structured|
    double tolerance = 0.0;  // 1e-9 * max(1, structured)
    bool within_tolerance = false;
};

/// Materializes the full d^N state and site-sum matrix and recomputes the
/// uncertainty directly. Guarded at d^N <= 4096; beyond that it refuses
/// outright rather than truncating.
inline DenseCrosscheckReport dense_crosscheck(const SiteSumObservable& obs,
                                              const ProductState& state) {
    detail::require_compatible(obs, state);
    dense::require_within_guard(state.local().dim(), state.copies(), "dense_crosscheck");

    const StateVector full(dense::kron_power(state.local().amplitudes(), state.copies()));
    const HermitianObservable full_obs(dense::site_sum(obs.local_term().matrix(), obs.sites()));

    const double structured = site_sum_uncertainty(obs, state);
    const double dense_value = uncertainty(full_obs, full);
    const double residual = std::abs(dense_value - structured);
    const double tolerance = 1e-9 * std::max(1.0, structured);
    return DenseCrosscheckReport{structured, dense_value, residual, tolerance,
                                 residual <= tolerance};
}

}  // namespace quncert

#endif  // QUNCERT_COLLECTIVE_HPP
