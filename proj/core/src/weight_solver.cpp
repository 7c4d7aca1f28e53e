#include "uwofdm/weight_solver.hpp"

#include <cmath>
#include <stdexcept>

#include "uwofdm/differential.hpp"
#include "uwofdm/eigen_hermitian.hpp"

namespace uwofdm {

namespace {

constexpr double degenerate_factor = 1e-8;
constexpr double rank_deficient_factor = 1e-10;

// Rotates `w` by a unit phase so that anchor^H w becomes real and
// nonnegative. Leaves w untouched when the inner product is negligible.
void fix_phase_against(cvec& w, std::span<const cplx> anchor)
{
    cplx inner{0.0, 0.0};
    for (std::size_t m = 0; m < w.size(); ++m)
        inner += std::conj(anchor[m]) * w[m];
    const double mag = std::abs(inner);
    if (mag < 1e-12)
        return;
    const cplx rotation = std::conj(inner) / mag;
    for (cplx& v : w)
        v *= rotation;
}

SubbandWeights solve_single(const PilotErrorMatrix& covariance, int pilot_count)
{
    const int m = covariance.subblocks;
    const HermitianEig eig = hermitian_eig(covariance.values, m);
    const double trace = covariance.trace();

    SubbandWeights out;
    out.lambda_min = eig.eigenvalues[0];
    out.rank_deficient = eig.eigenvalues[0] <= rank_deficient_factor * trace;
    out.degenerate = m > 1 && eig.eigenvalues[1] - eig.eigenvalues[0] <= degenerate_factor * trace;
    out.underdetermined = pilot_count < m;
    out.weights = eig.eigenvector(0);
    const double scale = std::sqrt(static_cast<double>(m));
    for (cplx& v : out.weights)
        v *= scale;
    const cvec ones(static_cast<std::size_t>(m), cplx{1.0, 0.0});
    fix_phase_against(out.weights, ones);
    return out;
}

} // namespace

double PilotErrorMatrix::trace() const
{
    double sum = 0.0;
    for (int i = 0; i < subblocks; ++i)
        sum += at(i, i).real();
    return sum;
}

DetectionErrorSet build_error_set(const PartialDemodMatrix& demod,
                                  std::span<const int> pilot_indices,
                                  std::span<const cplx> pilot_symbols)
{
    if (pilot_indices.empty())
        throw std::invalid_argument("build_error_set: need at least one pilot");
    if (pilot_indices.size() != pilot_symbols.size())
        throw std::invalid_argument("build_error_set: index/symbol count mismatch");
    const int m = demod.subblocks();
    const int k_count = demod.num_subcarriers();

    DetectionErrorSet out;
    out.subblocks = m;
    out.pilot_indices.assign(pilot_indices.begin(), pilot_indices.end());
    out.columns.resize(static_cast<std::size_t>(m) * pilot_indices.size());
    for (std::size_t i = 0; i < pilot_indices.size(); ++i) {
        const int k = pilot_indices[i];
        if (k < 1 || k >= k_count)
            throw std::invalid_argument("build_error_set: pilot index out of range");
        const cplx b = pilot_symbols[i];
        for (int seg = 0; seg < m; ++seg)
            out.columns[i * static_cast<std::size_t>(m) + static_cast<std::size_t>(seg)] =
                demod.at(seg, k) - demod.at(seg, k - 1) * b;
    }
    return out;
}

PilotErrorMatrix build_pilot_error_matrix(const DetectionErrorSet& errors)
{
    const int m = errors.subblocks;
    PilotErrorMatrix out;
    out.subblocks = m;
    out.values.assign(static_cast<std::size_t>(m) * static_cast<std::size_t>(m), cplx{0.0, 0.0});
    for (int i = 0; i < errors.count(); ++i) {
        const auto e = errors.column(i);
        for (int r = 0; r < m; ++r)
            for (int c = 0; c < m; ++c)
                out.values[static_cast<std::size_t>(r * m + c)] +=
                    e[static_cast<std::size_t>(r)] * std::conj(e[static_cast<std::size_t>(c)]);
    }
    // Store the Hermitian part exactly; accumulation order otherwise leaves
    // roundoff-level asymmetry.
    for (int r = 0; r < m; ++r) {
        out.values[static_cast<std::size_t>(r * m + r)] =
            out.values[static_cast<std::size_t>(r * m + r)].real();
        for (int c = r + 1; c < m; ++c) {
            const cplx v = 0.5 * (out.values[static_cast<std::size_t>(r * m + c)] +
                                  std::conj(out.values[static_cast<std::size_t>(c * m + r)]));
            out.values[static_cast<std::size_t>(r * m + c)] = v;
            out.values[static_cast<std::size_t>(c * m + r)] = std::conj(v);
        }
    }
    return out;
}

const cvec& WeightSolution::weights_for(int subcarrier) const
{
    if (subbands.empty())
        throw std::logic_error("WeightSolution: empty");
    if (subband_size <= 0 || subbands.size() == 1)
        return subbands.front().weights;
    const auto j = static_cast<std::size_t>(subcarrier / subband_size);
    if (j >= subbands.size())
        throw std::invalid_argument("WeightSolution: subcarrier out of range");
    return subbands[j].weights;
}

WeightSolution solve_weights_eigen(const PilotErrorMatrix& covariance, int pilot_count)
{
    WeightSolution out;
    out.subblocks = covariance.subblocks;
    out.subband_size = 0;
    out.subbands.push_back(solve_single(covariance, pilot_count));
    return out;
}

WeightSolution solve_weights_subband(const PartialDemodMatrix& demod, const PilotLayout& pilots,
                                     std::span<const cplx> pilot_symbols, int num_subbands)
{
    const int k_count = demod.num_subcarriers();
    if (pilots.num_subcarriers() != k_count)
        throw std::invalid_argument("solve_weights_subband: layout/block size mismatch");
    if (static_cast<int>(pilot_symbols.size()) != pilots.count())
        throw std::invalid_argument("solve_weights_subband: pilot symbol count mismatch");
    if (num_subbands < 1 || k_count % num_subbands != 0)
        throw std::invalid_argument("solve_weights_subband: subband count must divide block size");
    const int subband_size = k_count / num_subbands;

    WeightSolution out;
    out.subblocks = demod.subblocks();
    out.subband_size = subband_size;
    out.subbands.reserve(static_cast<std::size_t>(num_subbands));

    const auto& all_indices = pilots.indices();
    for (int j = 0; j < num_subbands; ++j) {
        std::vector<int> indices;
        cvec symbols;
        for (std::size_t i = 0; i < all_indices.size(); ++i) {
            const int k = all_indices[i];
            if (k / subband_size == j) {
                indices.push_back(k);
                symbols.push_back(pilot_symbols[i]);
            }
        }
        if (indices.empty())
            throw std::invalid_argument("solve_weights_subband: a subband has no pilots");
        const auto errors = build_error_set(demod, indices, symbols);
        const auto covariance = build_pilot_error_matrix(errors);
        out.subbands.push_back(solve_single(covariance, static_cast<int>(indices.size())));
        if (j > 0)
            fix_phase_against(out.subbands[static_cast<std::size_t>(j)].weights,
                              out.subbands[static_cast<std::size_t>(j - 1)].weights);
    }
    return out;
}

WeightSolution uniform_weights(int subblocks)
{
    if (subblocks < 1)
        throw std::invalid_argument("uniform_weights: segment count must be positive");
    WeightSolution out;
    out.subblocks = subblocks;
    out.subband_size = 0;
    SubbandWeights w;
    w.weights.assign(static_cast<std::size_t>(subblocks), cplx{1.0, 0.0});
    w.lambda_min = 0.0;
    out.subbands.push_back(std::move(w));
    return out;
}

std::vector<int> detect_block(const PartialDemodMatrix& demod, const WeightSolution& weights,
                              const PilotLayout& pilots, const PskConstellation& constellation)
{
    const int k_count = demod.num_subcarriers();
    if (pilots.num_subcarriers() != k_count)
        throw std::invalid_argument("detect_block: layout/block size mismatch");
    if (weights.subblocks != demod.subblocks())
        throw std::invalid_argument("detect_block: weight/segment count mismatch");

    std::vector<int> decisions;
    decisions.reserve(static_cast<std::size_t>(k_count - 1 - pilots.count()));
    cplx x_prev = combine(demod, weights.weights_for(0), 0);
    for (int k = 1; k < k_count; ++k) {
        const cplx x_curr = combine(demod, weights.weights_for(k), k);
        if (!pilots.is_pilot(k))
            decisions.push_back(detect_ml(x_prev, x_curr, constellation));
        x_prev = x_curr;
    }
    return decisions;
}

} // namespace uwofdm
