#pragma once

#include <span>
#include <vector>

#include "uwofdm/constellation.hpp"
#include "uwofdm/pilot_layout.hpp"
#include "uwofdm/transform.hpp"
#include "uwofdm/types.hpp"

namespace uwofdm {

/// Per-segment differential detection errors at the pilot subcarriers:
/// column i holds e_i = ybar_{k_i} - ybar_{k_i - 1} * b_i for pilot index k_i
/// with known symbol b_i, where ybar_k is the length-M observation vector of
/// subcarrier k. On a distortion-free channel every column sums to zero
/// across segments, because the segment observations of subcarrier k add up
/// to the full-block DFT bin.
struct DetectionErrorSet {
    int subblocks = 0;              ///< M
    std::vector<int> pilot_indices; ///< ascending, all >= 1
    cvec columns;                   ///< column-major M x I

    int count() const { return static_cast<int>(pilot_indices.size()); }
    std::span<const cplx> column(int i) const
    {
        return {columns.data() +
                    static_cast<std::size_t>(i) * static_cast<std::size_t>(subblocks),
                static_cast<std::size_t>(subblocks)};
    }
};

DetectionErrorSet build_error_set(const PartialDemodMatrix& demod,
                                  std::span<const int> pilot_indices,
                                  std::span<const cplx> pilot_symbols);

/// Sample covariance of the detection errors, R = sum_i e_i e_i^H, stored
/// Hermitian-symmetrized. Positive semidefinite with rank at most the pilot
/// count.
struct PilotErrorMatrix {
    int subblocks = 0;
    cvec values; ///< row-major M x M

    cplx at(int i, int j) const
    {
        return values[static_cast<std::size_t>(i) * static_cast<std::size_t>(subblocks) +
                      static_cast<std::size_t>(j)];
    }
    double trace() const;
};

PilotErrorMatrix build_pilot_error_matrix(const DetectionErrorSet& errors);

/// Combiner weights for one subband, with solve diagnostics.
struct SubbandWeights {
    cvec weights;                  ///< length M, norm sqrt(M)
    double lambda_min = 0.0;       ///< smallest eigenvalue of the error covariance
    bool degenerate = false;       ///< two smallest eigenvalues within 1e-8 * trace
    bool rank_deficient = false;   ///< lambda_min <= 1e-10 * trace
    bool underdetermined = false;  ///< fewer pilots than segments
};

/// Weights for a whole block. `subband_size` subcarriers share each entry of
/// `subbands`; a subband_size of zero means one set of weights for the whole
/// block.
struct WeightSolution {
    int subblocks = 0;
    int subband_size = 0;
    std::vector<SubbandWeights> subbands;

    const cvec& weights_for(int subcarrier) const;
    int num_subbands() const { return static_cast<int>(subbands.size()); }
};

/// Minimizes w^H R w over ||w|| = sqrt(M): w is sqrt(M) times the eigenvector
/// of the smallest eigenvalue, and the attained objective is M * lambda_min.
/// The returned weights have their free global phase fixed so that the inner
/// product with the all-ones vector is real and nonnegative. `pilot_count`
/// drives the underdetermined diagnostic.
WeightSolution solve_weights_eigen(const PilotErrorMatrix& covariance, int pilot_count);

/// Splits the block into `num_subbands` contiguous subbands, solves the
/// eigen problem per subband from that subband's pilots, and fixes each
/// subband's free phase against its left neighbor (the first against the
/// all-ones vector) so detection across subband boundaries stays coherent.
WeightSolution solve_weights_subband(const PartialDemodMatrix& demod, const PilotLayout& pilots,
                                     std::span<const cplx> pilot_symbols, int num_subbands);

/// Fixed all-ones weights: combining with them reproduces conventional
/// full-block FFT demodulation exactly.
WeightSolution uniform_weights(int subblocks);

/// Detects the information symbols of one block from combined observations
/// x_k = w_k^H ybar_k using maximum-likelihood differential detection.
/// Pilot subcarriers participate as references but produce no output;
/// returned indices follow ascending data-subcarrier order.
std::vector<int> detect_block(const PartialDemodMatrix& demod, const WeightSolution& weights,
                              const PilotLayout& pilots, const PskConstellation& constellation);

} // namespace uwofdm
