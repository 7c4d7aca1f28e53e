#pragma once

#include <span>
#include <vector>

#include "uwofdm/constellation.hpp"
#include "uwofdm/pilot_layout.hpp"
#include "uwofdm/transform.hpp"
#include "uwofdm/types.hpp"

namespace uwofdm {

/// Gradient of J = |b_ref - (w^H y_curr)/(w^H y_prev)|^2 with respect to
/// conj(w) (Wirtinger calculus):
///   grad = -conj(xi) * (y_curr - bhat * y_prev) / (w^H y_prev)
/// with bhat = (w^H y_curr)/(w^H y_prev) and xi = b_ref - bhat.
/// Throws std::domain_error when |w^H y_prev| < 1e-12.
cvec differential_mse_gradient(std::span<const cplx> w, std::span<const cplx> y_prev,
                               std::span<const cplx> y_curr, cplx reference_symbol);

/// Outcome of one adaptive pass over a block.
struct AdaptiveResult {
    int subblocks = 0;
    /// Row k holds the weights applied at subcarrier k; row 0 is the initial
    /// all-ones vector, which is also what subcarrier 1 uses.
    cvec weight_trajectory; ///< row-major K x M
    /// Detected point indices at the data subcarriers, ascending.
    std::vector<int> data_decisions;
    /// Steps where |w^H y_{k-1}| fell below 1e-12 and the update was skipped.
    int skipped_updates = 0;

    std::span<const cplx> weights_at(int subcarrier) const
    {
        return {weight_trajectory.data() +
                    static_cast<std::size_t>(subcarrier) * static_cast<std::size_t>(subblocks),
                static_cast<std::size_t>(subblocks)};
    }
};

/// Stochastic-gradient combiner adaptation across one block, sweeping the
/// subcarriers in order. Starting from all-ones weights, each step forms
/// bhat_k = (w^H ybar_k)/(w^H ybar_{k-1}), measures the error against the
/// known pilot symbol inside the leading contiguous pilot run (decision-
/// directed with ratio detection afterwards), and walks one gradient step:
///   w <- w + mu * conj(xi) * (ybar_k - bhat * ybar_{k-1}) / (w^H ybar_{k-1})
/// The layout must be contiguous and the step size nonnegative.
AdaptiveResult solve_weights_adaptive(const PartialDemodMatrix& demod, const PilotLayout& pilots,
                                      std::span<const cplx> pilot_symbols, double step_size,
                                      const PskConstellation& constellation);

} // namespace uwofdm
