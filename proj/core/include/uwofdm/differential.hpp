#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "uwofdm/constellation.hpp"
#include "uwofdm/types.hpp"

namespace uwofdm {

/// Differentially encodes K-1 information symbols into K coded symbols:
/// d_0 is the constellation's first point and d_k = b_k * d_{k-1}. Every
/// input must be a constellation point.
cvec differential_encode(std::span<const cplx> info, const PskConstellation& constellation);

/// Recovers the information symbols from coded symbols: b_k = d_k / d_{k-1}.
cvec differential_decode(std::span<const cplx> coded);

/// Maximum-likelihood differential detection of one symbol from adjacent
/// observations: argmin over b of |x_curr - x_prev * b|^2. Ties resolve to
/// the lowest index. Returns the detected point index.
int detect_ml(cplx x_prev, cplx x_curr, const PskConstellation& constellation);

/// Ratio-based detection: nearest constellation point to x_curr / x_prev.
/// Throws std::domain_error when x_prev is zero.
int detect_ratio(cplx x_prev, cplx x_curr, const PskConstellation& constellation);

/// Gray labels of a run of point indices, most significant bit first.
std::vector<std::uint8_t> symbols_to_bits(std::span<const int> indices,
                                          const PskConstellation& constellation);

/// Point indices carrying a run of bits; size must be a multiple of the
/// per-symbol bit count.
std::vector<int> bits_to_symbols(std::span<const std::uint8_t> bits,
                                 const PskConstellation& constellation);

} // namespace uwofdm
