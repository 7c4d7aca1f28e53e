#include "uwofdm/ofdm_block.hpp"

#include <stdexcept>

#include "uwofdm/differential.hpp"
#include "uwofdm/transform.hpp"

namespace uwofdm {

OfdmBlock make_ofdm_block(std::span<const cplx> info, const PskConstellation& constellation)
{
    const auto block_size = static_cast<int>(info.size()) + 1;
    if (!is_power_of_two(block_size))
        throw std::invalid_argument("make_ofdm_block: block size must be a power of two");
    OfdmBlock block;
    block.info.assign(info.begin(), info.end());
    block.coded = differential_encode(info, constellation);
    block.time = idft_unitary(block.coded);
    return block;
}

} // namespace uwofdm
