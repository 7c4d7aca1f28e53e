#pragma once

#include <span>
#include <vector>

#include "uwofdm/ofdm_block.hpp"
#include "uwofdm/rng.hpp"
#include "uwofdm/types.hpp"

namespace uwofdm {

/// Physical layout of one OFDM signal: bandwidth B, carrier f_c, and K
/// subcarriers at spacing B/K. Subcarrier k sits at f_c - B/2 + k*B/K and
/// the complex baseband sample rate equals B.
struct LinkGeometry {
    double bandwidth_hz = 4096.0;
    double carrier_hz = 6000.0;
    int num_subcarriers = 1024;

    double subcarrier_spacing() const { return bandwidth_hz / num_subcarriers; }
    double block_duration() const { return num_subcarriers / bandwidth_hz; }
    double subcarrier_freq(int k) const
    {
        return carrier_hz - bandwidth_hz / 2.0 + k * subcarrier_spacing();
    }
    std::vector<double> subcarrier_freqs() const;
};

/// How residual Doppler acts across the block.
enum class DopplerMode {
    TimeInvariant, ///< no Doppler; static multipath only
    Narrowband,    ///< one common carrier-frequency offset a*f_c
    Wideband,      ///< per-subcarrier offset a*f_k (post-resampling residual)
};

/// One channel draw plus the distortion applied on top of it.
struct ChannelRealization {
    cvec taps;                  ///< complex baseband impulse response
    double doppler_scale = 0.0; ///< residual scaling factor a >= 0
    DopplerMode mode = DopplerMode::TimeInvariant;
    double noise_variance = 0.0; ///< complex AWGN variance per sample
};

/// Draws `num_taps` i.i.d. CN(0, 1/num_taps) taps, so the expected channel
/// energy is one regardless of the spread.
cvec draw_channel_taps(int num_taps, Rng& rng);

/// Frequency response on the K-subcarrier grid:
/// H_k = sum_l h_l exp(-j*2*pi*l*k/K). K must be a power of two and at least
/// the tap count.
cvec freq_response(std::span<const cplx> taps, int num_subcarriers);

/// Complex noise variance that yields the requested SNR for unit-energy
/// constellations and unit-energy channels: 10^(-snr_db/10). An infinite
/// SNR maps to exactly zero variance.
double noise_variance_for_snr(double snr_db);

/// Adds circularly symmetric complex gaussian noise in place, one draw per
/// sample in index order.
void add_awgn(std::span<cplx> samples, double variance, Rng& rng);

/// Static-channel received block (no noise): the circular convolution of the
/// channel with the time-domain block, computed as IDFT(H .* d).
cvec time_invariant_signal(std::span<const cplx> coded, std::span<const cplx> freq_resp);

/// Static channel plus a common phase ramp: sample n of the time-invariant
/// signal rotated by exp(j*theta_n).
cvec narrowband_signal(std::span<const cplx> coded, std::span<const cplx> freq_resp,
                       std::span<const double> phase_ramp);

/// Phase ramp of a common carrier-frequency offset a*f_c sampled at rate B:
/// theta_n = 2*pi*a*f_c*n/B.
std::vector<double> cfo_phase_ramp(double doppler_scale, const LinkGeometry& geometry);

/// Received block when each subcarrier k is shifted by a times its own
/// passband frequency: r_n = (1/sqrt(K)) * sum_k H_k d_k
/// exp(j*2*pi*(k*B/K + a*f_k)*n/B). Direct O(K^2) evaluation; the frequency
/// list is explicit so callers can probe arbitrary shift profiles.
cvec wideband_signal(std::span<const cplx> coded, std::span<const cplx> freq_resp,
                     std::span<const double> subcarrier_freqs_hz, double doppler_scale,
                     double bandwidth_hz);

/// Equivalent of wideband_signal on the standard frequency grid, evaluated
/// with a Bluestein chirp transform in O(K log K). Matches the direct form
/// to near machine precision.
cvec wideband_signal_fast(std::span<const cplx> coded, std::span<const cplx> freq_resp,
                          double doppler_scale, const LinkGeometry& geometry);

/// Passes one block through a channel realization and adds noise. The noise
/// draw consumes exactly K generator samples in index order, so equal seeds
/// give equal noise across modes.
cvec synthesize_received(const OfdmBlock& block, const ChannelRealization& channel,
                         const LinkGeometry& geometry, Rng& rng);

} // namespace uwofdm
