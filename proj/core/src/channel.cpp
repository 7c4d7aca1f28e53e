#include "uwofdm/channel.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "uwofdm/transform.hpp"

namespace uwofdm {

namespace {

// exp(j*pi*(1+a)*m^2/K) with the a-free part reduced exactly: m^2/K is an
// exact double for the sizes used here (K a power of two, m < K <= 2^20).
cplx chirp(double m_sq_over_k, double doppler_scale)
{
    const double base = std::fmod(m_sq_over_k, 2.0);
    const double frac = std::fmod(doppler_scale * m_sq_over_k, 2.0);
    return std::polar(1.0, std::numbers::pi * (base + frac));
}

int next_power_of_two(int n)
{
    int p = 1;
    while (p < n)
        p <<= 1;
    return p;
}

} // namespace

std::vector<double> LinkGeometry::subcarrier_freqs() const
{
    std::vector<double> freqs(static_cast<std::size_t>(num_subcarriers));
    for (int k = 0; k < num_subcarriers; ++k)
        freqs[static_cast<std::size_t>(k)] = subcarrier_freq(k);
    return freqs;
}

cvec draw_channel_taps(int num_taps, Rng& rng)
{
    if (num_taps < 1)
        throw std::invalid_argument("draw_channel_taps: need at least one tap");
    cvec taps(static_cast<std::size_t>(num_taps));
    const double variance = 1.0 / num_taps;
    for (cplx& tap : taps)
        tap = rng.complex_gaussian(variance);
    return taps;
}

cvec freq_response(std::span<const cplx> taps, int num_subcarriers)
{
    if (!is_power_of_two(num_subcarriers))
        throw std::invalid_argument("freq_response: grid size must be a power of two");
    if (taps.empty() || static_cast<int>(taps.size()) > num_subcarriers)
        throw std::invalid_argument("freq_response: tap count must be in [1, K]");
    cvec response(static_cast<std::size_t>(num_subcarriers), cplx{0.0, 0.0});
    std::copy(taps.begin(), taps.end(), response.begin());
    fft_pow2(response, false);
    return response;
}

double noise_variance_for_snr(double snr_db)
{
    if (std::isinf(snr_db) && snr_db > 0.0)
        return 0.0;
    const double variance = std::pow(10.0, -snr_db / 10.0);
    if (!(variance < std::numeric_limits<double>::infinity()))
        throw std::invalid_argument("noise_variance_for_snr: SNR must be finite or +inf");
    return variance;
}

void add_awgn(std::span<cplx> samples, double variance, Rng& rng)
{
    if (variance < 0.0)
        throw std::invalid_argument("add_awgn: negative variance");
    if (variance == 0.0)
        return;
    for (cplx& s : samples)
        s += rng.complex_gaussian(variance);
}

cvec time_invariant_signal(std::span<const cplx> coded, std::span<const cplx> freq_resp)
{
    if (coded.size() != freq_resp.size())
        throw std::invalid_argument("time_invariant_signal: size mismatch");
    cvec spectrum(coded.size());
    for (std::size_t k = 0; k < coded.size(); ++k)
        spectrum[k] = coded[k] * freq_resp[k];
    return idft_unitary(spectrum);
}

cvec narrowband_signal(std::span<const cplx> coded, std::span<const cplx> freq_resp,
                       std::span<const double> phase_ramp)
{
    if (phase_ramp.size() != coded.size())
        throw std::invalid_argument("narrowband_signal: phase ramp size mismatch");
    cvec out = time_invariant_signal(coded, freq_resp);
    for (std::size_t n = 0; n < out.size(); ++n)
        out[n] *= std::polar(1.0, phase_ramp[n]);
    return out;
}

std::vector<double> cfo_phase_ramp(double doppler_scale, const LinkGeometry& geometry)
{
    std::vector<double> ramp(static_cast<std::size_t>(geometry.num_subcarriers));
    const double cycles_per_sample = doppler_scale * geometry.carrier_hz / geometry.bandwidth_hz;
    for (int n = 0; n < geometry.num_subcarriers; ++n)
        ramp[static_cast<std::size_t>(n)] = 2.0 * std::numbers::pi * cycles_per_sample * n;
    return ramp;
}

cvec wideband_signal(std::span<const cplx> coded, std::span<const cplx> freq_resp,
                     std::span<const double> subcarrier_freqs_hz, double doppler_scale,
                     double bandwidth_hz)
{
    const auto block = coded.size();
    if (freq_resp.size() != block || subcarrier_freqs_hz.size() != block)
        throw std::invalid_argument("wideband_signal: size mismatch");
    if (bandwidth_hz <= 0.0)
        throw std::invalid_argument("wideband_signal: bandwidth must be positive");
    const double k_count = static_cast<double>(block);
    cvec out(block);
    const double scale = 1.0 / std::sqrt(k_count);
    for (std::size_t n = 0; n < block; ++n) {
        cplx acc{0.0, 0.0};
        for (std::size_t k = 0; k < block; ++k) {
            const double grid_cycles =
                std::fmod(static_cast<double>(n) * static_cast<double>(k) / k_count, 1.0);
            const double shift_cycles = std::fmod(
                doppler_scale * subcarrier_freqs_hz[k] / bandwidth_hz * static_cast<double>(n), 1.0);
            const cplx phase =
                std::polar(1.0, 2.0 * std::numbers::pi * (grid_cycles + shift_cycles));
            acc += coded[k] * freq_resp[k] * phase;
        }
        out[n] = acc * scale;
    }
    return out;
}

cvec wideband_signal_fast(std::span<const cplx> coded, std::span<const cplx> freq_resp,
                          double doppler_scale, const LinkGeometry& geometry)
{
    const int block = geometry.num_subcarriers;
    if (static_cast<int>(coded.size()) != block || static_cast<int>(freq_resp.size()) != block)
        throw std::invalid_argument("wideband_signal_fast: size mismatch");
    if (!is_power_of_two(block))
        throw std::invalid_argument("wideband_signal_fast: block size must be a power of two");
    const double k_count = static_cast<double>(block);

    // r_n = (1/sqrt(K)) e^{j 2 pi common n} sum_k c_k z^{nk},
    // z = e^{j 2 pi (1+a)/K}, c_k = H_k d_k, common = a (f_c - B/2) / B.
    // The chirp transform factors z^{nk} = chirp(n) chirp(k) conj(chirp(n-k))
    // and evaluates the sum as one linear convolution.
    const int conv_len = next_power_of_two(2 * block - 1);
    cvec a_buf(static_cast<std::size_t>(conv_len), cplx{0.0, 0.0});
    cvec b_buf(static_cast<std::size_t>(conv_len), cplx{0.0, 0.0});
    for (int k = 0; k < block; ++k) {
        const double msq = static_cast<double>(k) * static_cast<double>(k) / k_count;
        a_buf[static_cast<std::size_t>(k)] =
            coded[static_cast<std::size_t>(k)] * freq_resp[static_cast<std::size_t>(k)] *
            chirp(msq, doppler_scale);
    }
    for (int m = 0; m < block; ++m) {
        const double msq = static_cast<double>(m) * static_cast<double>(m) / k_count;
        const cplx value = std::conj(chirp(msq, doppler_scale));
        b_buf[static_cast<std::size_t>(m)] = value;
        if (m > 0)
            b_buf[static_cast<std::size_t>(conv_len - m)] = value;
    }
    fft_pow2(a_buf, false);
    fft_pow2(b_buf, false);
    for (int i = 0; i < conv_len; ++i)
        a_buf[static_cast<std::size_t>(i)] *= b_buf[static_cast<std::size_t>(i)];
    fft_pow2(a_buf, true);

    const double common =
        doppler_scale * (geometry.carrier_hz - geometry.bandwidth_hz / 2.0) / geometry.bandwidth_hz;
    const double scale = 1.0 / (std::sqrt(k_count) * conv_len);
    cvec out(static_cast<std::size_t>(block));
    for (int n = 0; n < block; ++n) {
        const double msq = static_cast<double>(n) * static_cast<double>(n) / k_count;
        const double common_cycles = std::fmod(common * n, 1.0);
        out[static_cast<std::size_t>(n)] = a_buf[static_cast<std::size_t>(n)] *
                                           chirp(msq, doppler_scale) *
                                           std::polar(scale, 2.0 * std::numbers::pi * common_cycles);
    }
    return out;
}

cvec synthesize_received(const OfdmBlock& block, const ChannelRealization& channel,
                         const LinkGeometry& geometry, Rng& rng)
{
    const int k_count = geometry.num_subcarriers;
    if (static_cast<int>(block.coded.size()) != k_count)
        throw std::invalid_argument("synthesize_received: block size does not match geometry");
    if (!is_power_of_two(k_count))
        throw std::invalid_argument("synthesize_received: block size must be a power of two");
    if (channel.taps.empty() || static_cast<int>(channel.taps.size()) > k_count)
        throw std::invalid_argument("synthesize_received: tap count must be in [1, K]");
    if (channel.doppler_scale < 0.0)
        throw std::invalid_argument("synthesize_received: Doppler scale must be nonnegative");
    if (channel.noise_variance < 0.0)
        throw std::invalid_argument("synthesize_received: negative noise variance");

    const cvec response = freq_response(channel.taps, k_count);
    cvec received;
    switch (channel.mode) {
    case DopplerMode::TimeInvariant:
        received = time_invariant_signal(block.coded, response);
        break;
    case DopplerMode::Narrowband: {
        const auto ramp = cfo_phase_ramp(channel.doppler_scale, geometry);
        received = narrowband_signal(block.coded, response, ramp);
        break;
    }
    case DopplerMode::Wideband:
        received = wideband_signal_fast(block.coded, response, channel.doppler_scale, geometry);
        break;
    default:
        throw std::invalid_argument("synthesize_received: unknown Doppler mode");
    }
    add_awgn(received, channel.noise_variance, rng);
    return received;
}

} // namespace uwofdm
