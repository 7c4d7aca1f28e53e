#pragma once

#include <span>

#include "uwofdm/constellation.hpp"
#include "uwofdm/types.hpp"

namespace uwofdm {

/// One differentially encoded OFDM block.
struct OfdmBlock {
    cvec info;  ///< information symbols b_1..b_{K-1}
    cvec coded; ///< coded subcarrier symbols d_0..d_{K-1}
    cvec time;  ///< unitary inverse DFT of `coded`
};

/// Differentially encodes `info` (length K-1, K a power of two) and attaches
/// the time-domain block.
OfdmBlock make_ofdm_block(std::span<const cplx> info, const PskConstellation& constellation);

} // namespace uwofdm
