#pragma once

#include <cstdint>
#include <vector>

#include "uwofdm/types.hpp"

namespace uwofdm {

/// Unit-circle Q-ary PSK alphabet with Gray-coded bit labels.
///
/// Point q sits at exp(j*2*pi*q/Q) and carries the Gray label q ^ (q >> 1),
/// so adjacent points differ in exactly one bit. Q must be a power of two.
class PskConstellation {
public:
    explicit PskConstellation(int order);

    int order() const { return order_; }
    int bits_per_symbol() const { return bits_; }

    cplx point(int index) const { return points_[static_cast<std::size_t>(index)]; }
    const cvec& points() const { return points_; }

    /// Gray label carried by point `index`.
    std::uint32_t bits_of(int index) const;

    /// Point index carrying Gray label `bits`.
    int index_of_bits(std::uint32_t bits) const;

    /// Index of the nearest point in Euclidean distance; ties resolve to the
    /// lowest index.
    int nearest(cplx x) const;

    /// Index of the point equal to x within `tol`, or -1 if none matches.
    int index_of_point(cplx x, double tol = 1e-9) const;

private:
    int order_;
    int bits_;
    cvec points_;
    std::vector<int> gray_to_index_;
};

} // namespace uwofdm
