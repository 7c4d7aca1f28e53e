#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "uwofdm/channel.hpp"
#include "uwofdm/types.hpp"

namespace uwofdm {

enum class Algorithm {
    SingleFft,     ///< conventional full-block FFT demodulation (all-ones weights)
    Eigen,         ///< eigendecomposition-based weights, one subband
    EigenWideband, ///< eigendecomposition-based weights per subband
    Adaptive,      ///< stochastic-gradient adapted weights
};

std::string_view algorithm_name(Algorithm algorithm);
std::optional<Algorithm> algorithm_from_name(std::string_view name);

/// Fixed system parameters shared by every point of a sweep.
struct SystemConfig {
    int num_subcarriers = 1024;    ///< K, power of two
    int constellation_order = 4;   ///< Q, power of two
    double bandwidth_hz = 4096.0;
    double carrier_hz = 6000.0;
    int num_taps = 48;             ///< channel impulse response length
    int pilots_per_band = 32;      ///< I; per subband for the subband algorithm
    DopplerMode doppler_mode = DopplerMode::Wideband;
    bool channel_fixed = false;    ///< one tap draw per point instead of per block
};

/// One cell of the sweep grid.
struct AxisPoint {
    double snr_db = 25.0;
    double doppler_scale = 0.0;
    int subblocks = 8;    ///< M
    int subbands = 1;     ///< N; meaningful for the per-subband algorithm
    Algorithm algorithm = Algorithm::Eigen;
    double step_size = 0.0; ///< mu; meaningful for the adaptive algorithm
};

/// A full sweep: the cartesian product of the axes, with axes that do not
/// apply to an algorithm collapsed to a single canonical value.
struct ExperimentSpec {
    SystemConfig system;
    std::vector<double> snr_db_axis = {25.0};
    std::vector<double> doppler_axis = {0.0};
    std::vector<int> subblock_axis = {8};
    std::vector<int> subband_axis = {1};
    std::vector<Algorithm> algorithm_axis = {Algorithm::Eigen};
    std::vector<double> step_size_axis = {0.01};
    int blocks_per_point = 500;
    std::uint64_t master_seed = 1;
    int workers = 0; ///< 0 selects the hardware concurrency
};

/// Aggregated result of one axis point.
struct BerRecord {
    AxisPoint axis;
    int pilot_count = 0; ///< total pilots per block
    int blocks = 0;
    long long bit_errors = 0;
    long long total_bits = 0;
    double ber = 0.0;
    /// Standard error of `ber` estimated from the spread of per-block error
    /// rates. Block fading makes this much larger than the binomial error on
    /// total_bits trials, so significance tests should use this value. NaN
    /// when the point has fewer than two blocks.
    double ber_standard_error = 0.0;
    /// Mean smallest eigenvalue across blocks and subbands; NaN for
    /// algorithms without an eigen solve.
    double lambda_min_mean = 0.0;
    long long degenerate_count = 0;
};

void validate_spec(const ExperimentSpec& spec);

/// Expands the axis product in canonical order (SNR, Doppler, segments,
/// subbands, algorithm, step size), collapsing inapplicable axes: subbands
/// fold to 1 except for the per-subband algorithm, and the step size folds
/// to 0 except for the adaptive algorithm. Duplicates after collapsing are
/// dropped.
std::vector<AxisPoint> enumerate_axes(const ExperimentSpec& spec);

/// Runs the Monte-Carlo trial for one axis point. Every block draws its own
/// substream from (master seed, axis, block index), so results do not depend
/// on worker count or scheduling, and any single block can be replayed in
/// isolation.
BerRecord run_point(const ExperimentSpec& spec, const AxisPoint& axis);

/// Runs every enumerated point in order. When given, `sink` observes each
/// record as soon as it is complete (streaming output survives a mid-sweep
/// failure).
std::vector<BerRecord> run_sweep(const ExperimentSpec& spec,
                                 const std::function<void(const BerRecord&)>& sink = {});

/// BER of an idealized coherent receiver (perfect channel knowledge, no
/// Doppler) over the same channel and noise realizations the differential
/// receiver sees at the matching axis point: each information symbol is
/// sliced from x_k / (H_k d_{k-1}) with the true previous coded symbol as
/// reference, so it pays none of the differential noise-doubling. Requires
/// the time-invariant Doppler mode. Subcarriers where |H_k| < 1e-12 are
/// excluded from both error and bit counts.
double coherent_oracle_ber(const ExperimentSpec& spec, double snr_db);

} // namespace uwofdm
