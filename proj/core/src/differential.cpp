#include "uwofdm/differential.hpp"

#include <cmath>
#include <stdexcept>

namespace uwofdm {

cvec differential_encode(std::span<const cplx> info, const PskConstellation& constellation)
{
    cvec coded(info.size() + 1);
    coded[0] = constellation.point(0);
    for (std::size_t k = 0; k < info.size(); ++k) {
        if (constellation.index_of_point(info[k]) < 0)
            throw std::invalid_argument("differential_encode: input is not a constellation point");
        coded[k + 1] = info[k] * coded[k];
    }
    return coded;
}

cvec differential_decode(std::span<const cplx> coded)
{
    if (coded.empty())
        throw std::invalid_argument("differential_decode: empty input");
    cvec info(coded.size() - 1);
    for (std::size_t k = 1; k < coded.size(); ++k) {
        if (std::abs(coded[k - 1]) == 0.0)
            throw std::domain_error("differential_decode: zero reference symbol");
        info[k - 1] = coded[k] / coded[k - 1];
    }
    return info;
}

int detect_ml(cplx x_prev, cplx x_curr, const PskConstellation& constellation)
{
    int best = 0;
    double best_metric = std::norm(x_curr - x_prev * constellation.point(0));
    for (int q = 1; q < constellation.order(); ++q) {
        const double metric = std::norm(x_curr - x_prev * constellation.point(q));
        if (metric < best_metric) {
            best_metric = metric;
            best = q;
        }
    }
    return best;
}

int detect_ratio(cplx x_prev, cplx x_curr, const PskConstellation& constellation)
{
    if (std::abs(x_prev) == 0.0)
        throw std::domain_error("detect_ratio: zero reference observation");
    return constellation.nearest(x_curr / x_prev);
}

std::vector<std::uint8_t> symbols_to_bits(std::span<const int> indices,
                                          const PskConstellation& constellation)
{
    const int width = constellation.bits_per_symbol();
    std::vector<std::uint8_t> bits;
    bits.reserve(indices.size() * static_cast<std::size_t>(width));
    for (int index : indices) {
        const std::uint32_t label = constellation.bits_of(index);
        for (int b = width - 1; b >= 0; --b)
            bits.push_back(static_cast<std::uint8_t>((label >> b) & 1u));
    }
    return bits;
}

std::vector<int> bits_to_symbols(std::span<const std::uint8_t> bits,
                                 const PskConstellation& constellation)
{
    const auto width = static_cast<std::size_t>(constellation.bits_per_symbol());
    if (bits.size() % width != 0)
        throw std::invalid_argument("bits_to_symbols: bit count not a multiple of symbol width");
    std::vector<int> indices;
    indices.reserve(bits.size() / width);
    for (std::size_t i = 0; i < bits.size(); i += width) {
        std::uint32_t label = 0;
        for (std::size_t b = 0; b < width; ++b) {
            if (bits[i + b] > 1)
                throw std::invalid_argument("bits_to_symbols: entries must be 0 or 1");
            label = (label << 1) | bits[i + b];
        }
        indices.push_back(constellation.index_of_bits(label));
    }
    return indices;
}

} // namespace uwofdm
