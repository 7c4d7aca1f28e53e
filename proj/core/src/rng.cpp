#include "uwofdm/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace uwofdm {

std::uint64_t mix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index)
{
    return mix64(mix64(mix64(master) ^ stream) ^ index);
}

std::uint64_t fnv1a(std::string_view bytes)
{
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

double Rng::uniform()
{
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
}

std::uint32_t Rng::uniform_index(std::uint32_t n)
{
    if (n == 0)
        throw std::invalid_argument("uniform_index: n must be positive");
    if ((n & (n - 1)) == 0)
        return static_cast<std::uint32_t>(gen_() >> 32) & (n - 1);
    const std::uint64_t nn = n;
    const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % nn + 1) % nn;
    std::uint64_t x = gen_();
    while (x > limit)
        x = gen_();
    return static_cast<std::uint32_t>(x % nn);
}

std::pair<double, double> Rng::gaussian_pair()
{
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log1p(-u1)); // log(1-u1), u1 in [0,1)
    const double phi = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(phi), r * std::sin(phi)};
}

std::complex<double> Rng::complex_gaussian(double variance)
{
    if (variance < 0.0)
        throw std::invalid_argument("complex_gaussian: negative variance");
    auto [re, im] = gaussian_pair();
    const double scale = std::sqrt(variance / 2.0);
    return {scale * re, scale * im};
}

} // namespace uwofdm
