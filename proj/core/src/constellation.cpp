#include "uwofdm/constellation.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace uwofdm {

namespace {

bool power_of_two(int n)
{
    return n > 0 && (n & (n - 1)) == 0;
}

} // namespace

PskConstellation::PskConstellation(int order) : order_(order)
{
    if (!power_of_two(order) || order < 2)
        throw std::invalid_argument("PskConstellation: order must be a power of two >= 2");
    bits_ = 0;
    for (int v = order; v > 1; v >>= 1)
        ++bits_;
    points_.resize(static_cast<std::size_t>(order));
    gray_to_index_.assign(static_cast<std::size_t>(order), -1);
    for (int q = 0; q < order; ++q) {
        const double phase = 2.0 * std::numbers::pi * q / order;
        points_[static_cast<std::size_t>(q)] = {std::cos(phase), std::sin(phase)};
        const auto label = static_cast<std::uint32_t>(q ^ (q >> 1));
        gray_to_index_[label] = q;
    }
}

std::uint32_t PskConstellation::bits_of(int index) const
{
    if (index < 0 || index >= order_)
        throw std::invalid_argument("bits_of: index out of range");
    const auto q = static_cast<std::uint32_t>(index);
    return q ^ (q >> 1);
}

int PskConstellation::index_of_bits(std::uint32_t bits) const
{
    if (bits >= static_cast<std::uint32_t>(order_))
        throw std::invalid_argument("index_of_bits: label out of range");
    return gray_to_index_[bits];
}

int PskConstellation::nearest(cplx x) const
{
    int best = 0;
    double best_metric = std::norm(x - points_[0]);
    for (int q = 1; q < order_; ++q) {
        const double metric = std::norm(x - points_[static_cast<std::size_t>(q)]);
        if (metric < best_metric) {
            best_metric = metric;
            best = q;
        }
    }
    return best;
}

int PskConstellation::index_of_point(cplx x, double tol) const
{
    for (int q = 0; q < order_; ++q)
        if (std::abs(x - points_[static_cast<std::size_t>(q)]) <= tol)
            return q;
    return -1;
}

} // namespace uwofdm
