#pragma once

#include <span>

#include "uwofdm/types.hpp"

namespace uwofdm {

bool is_power_of_two(int n);

/// In-place radix-2 FFT, unnormalized. `inverse` conjugates the twiddles.
/// The length must be a power of two.
void fft_pow2(std::span<cplx> data, bool inverse);

/// Unitary DFT: X_k = (1/sqrt(K)) * sum_n x_n exp(-j*2*pi*k*n/K).
cvec dft_unitary(std::span<const cplx> input);

/// Unitary inverse DFT: x_n = (1/sqrt(K)) * sum_k X_k exp(+j*2*pi*k*n/K).
cvec idft_unitary(std::span<const cplx> input);

/// Output of partial FFT demodulation: the K-point unitary DFT of each of M
/// windowed copies of a received block, where window m keeps the m-th of M
/// equal non-overlapping time segments (J = K/M samples) and zeroes the rest.
///
/// Row m holds the spectrum of segment m; column k stacks the M per-segment
/// observations of subcarrier k. Because the windows partition the block,
/// the rows of any column sum to the plain full-block DFT bin.
class PartialDemodMatrix {
public:
    PartialDemodMatrix(int subblocks, int num_subcarriers);

    int subblocks() const { return subblocks_; }
    int num_subcarriers() const { return num_subcarriers_; }

    cplx at(int m, int k) const
    {
        return values_[static_cast<std::size_t>(m) * static_cast<std::size_t>(num_subcarriers_) +
                       static_cast<std::size_t>(k)];
    }
    cplx& at(int m, int k)
    {
        return values_[static_cast<std::size_t>(m) * static_cast<std::size_t>(num_subcarriers_) +
                       static_cast<std::size_t>(k)];
    }

    std::span<const cplx> row(int m) const;

    /// The length-M observation vector for one subcarrier.
    cvec column(int k) const;

private:
    int subblocks_;
    int num_subcarriers_;
    cvec values_; // row-major M x K
};

/// Splits a K-sample received block into M = `subblocks` equal time segments
/// and returns the unitary K-point DFT of each zero-extended segment.
/// M must divide K and K must be a power of two.
PartialDemodMatrix partial_fft_demodulate(std::span<const cplx> received, int subblocks);

/// Combines one subcarrier's per-segment observations with weights w:
/// returns w^H * column(k). The weight vector must have length M and a
/// nonzero norm.
cplx combine(const PartialDemodMatrix& demod, std::span<const cplx> weights, int subcarrier);

} // namespace uwofdm
