#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "uwofdm/rng.hpp"
#include "uwofdm/transform.hpp"

using namespace uwofdm;

namespace {

// Textbook quadratic-time DFT, the oracle every fast path is checked against.
cvec naive_dft(std::span<const cplx> x, bool inverse, double scale)
{
    const std::size_t n = x.size();
    cvec out(n, cplx{0.0, 0.0});
    const double sign = inverse ? 1.0 : -1.0;
    for (std::size_t k = 0; k < n; ++k) {
        cplx acc{0.0, 0.0};
        for (std::size_t j = 0; j < n; ++j) {
            const double angle =
                sign * 2.0 * std::numbers::pi * static_cast<double>(k * j) / static_cast<double>(n);
            acc += x[j] * std::polar(1.0, angle);
        }
        out[k] = acc * scale;
    }
    return out;
}

cvec random_vector(std::size_t n, Rng& rng)
{
    cvec v(n);
    for (cplx& z : v)
        z = cplx{2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0};
    return v;
}

double max_abs_diff(const cvec& a, const cvec& b)
{
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

} // namespace

TEST_CASE("is_power_of_two")
{
    CHECK(is_power_of_two(1));
    CHECK(is_power_of_two(2));
    CHECK(is_power_of_two(1024));
    CHECK_FALSE(is_power_of_two(0));
    CHECK_FALSE(is_power_of_two(-4));
    CHECK_FALSE(is_power_of_two(48));
}

TEST_CASE("fft matches the naive DFT at several sizes")
{
    Rng rng(21);
    for (std::size_t n : {1u, 2u, 4u, 16u, 64u, 256u}) {
        cvec x = random_vector(n, rng);
        cvec expected = naive_dft(x, false, 1.0);
        cvec data = x;
        fft_pow2(data, false);
        CHECK(max_abs_diff(data, expected) < 1e-10 * static_cast<double>(n));

        cvec inv_expected = naive_dft(x, true, 1.0);
        data = x;
        fft_pow2(data, true);
        CHECK(max_abs_diff(data, inv_expected) < 1e-10 * static_cast<double>(n));
    }
}

TEST_CASE("impulse and DC transforms")
{
    cvec impulse(8, cplx{0.0, 0.0});
    impulse[0] = cplx{1.0, 0.0};
    fft_pow2(impulse, false);
    for (const cplx& v : impulse)
        CHECK(std::abs(v - cplx{1.0, 0.0}) < 1e-14);

    cvec dc(8, cplx{1.0, 0.0});
    fft_pow2(dc, false);
    CHECK(std::abs(dc[0] - cplx{8.0, 0.0}) < 1e-13);
    for (std::size_t k = 1; k < 8; ++k)
        CHECK(std::abs(dc[k]) < 1e-13);
}

TEST_CASE("unitary DFT preserves energy and inverts exactly")
{
    Rng rng(22);
    for (std::size_t n : {2u, 8u, 128u, 1024u}) {
        const cvec x = random_vector(n, rng);
        const cvec spectrum = dft_unitary(x);

        double in_energy = 0.0;
        double out_energy = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            in_energy += std::norm(x[i]);
            out_energy += std::norm(spectrum[i]);
        }
        CHECK(std::abs(in_energy - out_energy) < 1e-9 * in_energy);

        const cvec back = idft_unitary(spectrum);
        CHECK(max_abs_diff(back, x) < 1e-12);
    }
}

TEST_CASE("unitary transforms carry the 1/sqrt(K) constant")
{
    cvec dc(16, cplx{1.0, 0.0});
    const cvec spectrum = dft_unitary(dc);
    CHECK(std::abs(spectrum[0] - cplx{4.0, 0.0}) < 1e-13); // 16/sqrt(16)
    const cvec time = idft_unitary(spectrum);
    for (const cplx& v : time)
        CHECK(std::abs(v - cplx{1.0, 0.0}) < 1e-13);
}

TEST_CASE("transforms are linear")
{
    Rng rng(23);
    const cvec x = random_vector(64, rng);
    const cvec y = random_vector(64, rng);
    const cplx alpha{0.7, -1.3};
    cvec combo(64);
    for (std::size_t i = 0; i < 64; ++i)
        combo[i] = alpha * x[i] + y[i];
    const cvec lhs = dft_unitary(combo);
    const cvec fx = dft_unitary(x);
    const cvec fy = dft_unitary(y);
    for (std::size_t i = 0; i < 64; ++i)
        CHECK(std::abs(lhs[i] - (alpha * fx[i] + fy[i])) < 1e-12);
}

TEST_CASE("non-power-of-two lengths are rejected")
{
    cvec x(12, cplx{1.0, 0.0});
    CHECK_THROWS_AS(fft_pow2(x, false), std::invalid_argument);
    CHECK_THROWS_AS(dft_unitary(x), std::invalid_argument);
    CHECK_THROWS_AS(idft_unitary(x), std::invalid_argument);
}

TEST_CASE("partial demodulation equals zero-masked unitary DFTs")
{
    Rng rng(24);
    const int k_count = 64;
    const int m_count = 8;
    const int j_len = k_count / m_count;
    const cvec received = random_vector(static_cast<std::size_t>(k_count), rng);
    const PartialDemodMatrix demod = partial_fft_demodulate(received, m_count);
    REQUIRE(demod.subblocks() == m_count);
    REQUIRE(demod.num_subcarriers() == k_count);

    const double scale = 1.0 / std::sqrt(static_cast<double>(k_count));
    for (int m = 0; m < m_count; ++m) {
        cvec masked(static_cast<std::size_t>(k_count), cplx{0.0, 0.0});
        for (int n = m * j_len; n < (m + 1) * j_len; ++n)
            masked[static_cast<std::size_t>(n)] = received[static_cast<std::size_t>(n)];
        const cvec expected = naive_dft(masked, false, scale);
        for (int k = 0; k < k_count; ++k)
            CHECK(std::abs(demod.at(m, k) - expected[static_cast<std::size_t>(k)]) < 1e-11);
    }
}

TEST_CASE("segment spectra add up to the full FFT bin")
{
    Rng rng(25);
    for (int m_count : {1, 2, 8, 32}) {
        const int k_count = 256;
        const cvec received = random_vector(static_cast<std::size_t>(k_count), rng);
        const PartialDemodMatrix demod = partial_fft_demodulate(received, m_count);
        const cvec full = dft_unitary(received);
        for (int k = 0; k < k_count; ++k) {
            cplx sum{0.0, 0.0};
            for (int m = 0; m < m_count; ++m)
                sum += demod.at(m, k);
            CHECK(std::abs(sum - full[static_cast<std::size_t>(k)]) < 1e-9);
        }
    }
}

TEST_CASE("rows and columns view the same storage")
{
    Rng rng(26);
    const cvec received = random_vector(32, rng);
    const PartialDemodMatrix demod = partial_fft_demodulate(received, 4);
    for (int k = 0; k < 32; ++k) {
        const cvec col = demod.column(k);
        REQUIRE(col.size() == 4);
        for (int m = 0; m < 4; ++m) {
            CHECK(col[static_cast<std::size_t>(m)] == demod.at(m, k));
            CHECK(demod.row(m)[static_cast<std::size_t>(k)] == demod.at(m, k));
        }
    }
}

TEST_CASE("combine computes w^H times the column")
{
    Rng rng(27);
    const cvec received = random_vector(64, rng);
    const PartialDemodMatrix demod = partial_fft_demodulate(received, 8);
    const cvec w = random_vector(8, rng);
    for (int k : {0, 17, 63}) {
        cplx expected{0.0, 0.0};
        for (int m = 0; m < 8; ++m)
            expected += std::conj(w[static_cast<std::size_t>(m)]) * demod.at(m, k);
        CHECK(std::abs(combine(demod, w, k) - expected) < 1e-13);
    }
}

TEST_CASE("all-ones weights reproduce conventional demodulation")
{
    Rng rng(28);
    const cvec received = random_vector(128, rng);
    const PartialDemodMatrix demod = partial_fft_demodulate(received, 16);
    const cvec full = dft_unitary(received);
    const cvec ones(16, cplx{1.0, 0.0});
    for (int k = 0; k < 128; ++k)
        CHECK(std::abs(combine(demod, ones, k) - full[static_cast<std::size_t>(k)]) < 1e-10);
}

TEST_CASE("partial demodulation validates its inputs")
{
    cvec received(64, cplx{1.0, 0.0});
    CHECK_THROWS_AS(partial_fft_demodulate(received, 5), std::invalid_argument);
    CHECK_THROWS_AS(partial_fft_demodulate(received, 0), std::invalid_argument);
    cvec odd(48, cplx{1.0, 0.0});
    CHECK_THROWS_AS(partial_fft_demodulate(odd, 4), std::invalid_argument);

    const PartialDemodMatrix demod = partial_fft_demodulate(received, 4);
    const cvec short_w(3, cplx{1.0, 0.0});
    CHECK_THROWS_AS(combine(demod, short_w, 0), std::invalid_argument);
    const cvec zero_w(4, cplx{0.0, 0.0});
    CHECK_THROWS_AS(combine(demod, zero_w, 0), std::invalid_argument);
    const cvec w(4, cplx{1.0, 0.0});
    CHECK_THROWS_AS(combine(demod, w, 64), std::invalid_argument);
    CHECK_THROWS_AS(combine(demod, w, -1), std::invalid_argument);
}
