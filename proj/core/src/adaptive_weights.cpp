#include "uwofdm/adaptive_weights.hpp"

#include <cmath>
#include <stdexcept>

#include "uwofdm/differential.hpp"

namespace uwofdm {

namespace {

constexpr double reference_guard = 1e-12;

cplx inner_product(std::span<const cplx> w, std::span<const cplx> y)
{
    cplx acc{0.0, 0.0};
    for (std::size_t m = 0; m < w.size(); ++m)
        acc += std::conj(w[m]) * y[m];
    return acc;
}

} // namespace

cvec differential_mse_gradient(std::span<const cplx> w, std::span<const cplx> y_prev,
                               std::span<const cplx> y_curr, cplx reference_symbol)
{
    if (w.size() != y_prev.size() || w.size() != y_curr.size())
        throw std::invalid_argument("differential_mse_gradient: size mismatch");
    const cplx denom = inner_product(w, y_prev);
    if (std::abs(denom) < reference_guard)
        throw std::domain_error("differential_mse_gradient: reference observation too small");
    const cplx numer = inner_product(w, y_curr);
    const cplx bhat = numer / denom;
    const cplx xi = reference_symbol - bhat;
    cvec grad(w.size());
    for (std::size_t m = 0; m < w.size(); ++m)
        grad[m] = -std::conj(xi) * (y_curr[m] - bhat * y_prev[m]) / denom;
    return grad;
}

AdaptiveResult solve_weights_adaptive(const PartialDemodMatrix& demod, const PilotLayout& pilots,
                                      std::span<const cplx> pilot_symbols, double step_size,
                                      const PskConstellation& constellation)
{
    const int k_count = demod.num_subcarriers();
    const int m = demod.subblocks();
    if (pilots.mode() != PilotMode::Contiguous)
        throw std::invalid_argument("solve_weights_adaptive: needs a contiguous pilot layout");
    if (pilots.num_subcarriers() != k_count)
        throw std::invalid_argument("solve_weights_adaptive: layout/block size mismatch");
    if (static_cast<int>(pilot_symbols.size()) != pilots.count())
        throw std::invalid_argument("solve_weights_adaptive: pilot symbol count mismatch");
    if (!(step_size >= 0.0))
        throw std::invalid_argument("solve_weights_adaptive: step size must be nonnegative");

    AdaptiveResult out;
    out.subblocks = m;
    out.weight_trajectory.assign(
        static_cast<std::size_t>(k_count) * static_cast<std::size_t>(m), cplx{0.0, 0.0});
    out.data_decisions.reserve(static_cast<std::size_t>(k_count - 1 - pilots.count()));

    cvec w(static_cast<std::size_t>(m), cplx{1.0, 0.0});
    for (int i = 0; i < m; ++i)
        out.weight_trajectory[static_cast<std::size_t>(i)] = w[static_cast<std::size_t>(i)];

    const int pilot_count = pilots.count();
    cvec y_prev = demod.column(0);
    for (int k = 1; k < k_count; ++k) {
        for (int i = 0; i < m; ++i)
            out.weight_trajectory[static_cast<std::size_t>(k) * static_cast<std::size_t>(m) +
                                  static_cast<std::size_t>(i)] = w[static_cast<std::size_t>(i)];
        const cvec y_curr = demod.column(k);
        const cplx denom = inner_product(w, y_prev);
        if (std::abs(denom) < reference_guard) {
            // No usable reference: keep the weights, decide on index alone.
            if (k > pilot_count)
                out.data_decisions.push_back(0);
            ++out.skipped_updates;
            y_prev = y_curr;
            continue;
        }
        const cplx numer = inner_product(w, y_curr);
        const cplx bhat = numer / denom;
        cplx reference;
        if (k <= pilot_count) {
            reference = pilot_symbols[static_cast<std::size_t>(k - 1)];
        } else {
            const int decision = constellation.nearest(bhat);
            out.data_decisions.push_back(decision);
            reference = constellation.point(decision);
        }
        const cplx xi = reference - bhat;
        for (int i = 0; i < m; ++i)
            w[static_cast<std::size_t>(i)] +=
                step_size * std::conj(xi) *
                (y_curr[static_cast<std::size_t>(i)] - bhat * y_prev[static_cast<std::size_t>(i)]) /
                denom;
        y_prev = y_curr;
    }
    return out;
}

} // namespace uwofdm
