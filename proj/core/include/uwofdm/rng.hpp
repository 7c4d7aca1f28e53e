#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <string_view>
#include <utility>

namespace uwofdm {

/// splitmix64 finalizer; bijective on 64-bit words.
std::uint64_t mix64(std::uint64_t x);

/// Collapses (master seed, stream tag, item index) into one well-spread
/// generator seed so independent substreams never share state.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index);

/// FNV-1a hash of a byte string, used to tag substreams by a stable name.
std::uint64_t fnv1a(std::string_view bytes);

/// Deterministic random stream.
///
/// mt19937_64 output is fixed by the C++ standard, and every conversion to
/// double below is spelled out explicitly (no std::*_distribution, whose
/// algorithms are implementation-defined), so a given seed produces the same
/// sample sequence on every platform and toolchain.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    /// Uniform double in [0, 1) with 53-bit resolution.
    double uniform();

    /// Uniform integer in [0, n); n must be positive.
    std::uint32_t uniform_index(std::uint32_t n);

    /// One fair bit.
    int bit() { return static_cast<int>(gen_() >> 63); }

    /// Pair of independent standard normals (Box-Muller).
    std::pair<double, double> gaussian_pair();

    /// Circularly symmetric complex gaussian with E|z|^2 = variance.
    std::complex<double> complex_gaussian(double variance);

private:
    std::mt19937_64 gen_;
};

} // namespace uwofdm
