#include "uwofdm/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <charconv>
#include <cmath>
#include <exception>
#include <limits>
#include <stdexcept>
#include <thread>

#include "uwofdm/adaptive_weights.hpp"
#include "uwofdm/differential.hpp"
#include "uwofdm/pilot_layout.hpp"
#include "uwofdm/rng.hpp"
#include "uwofdm/transform.hpp"
#include "uwofdm/weight_solver.hpp"

namespace uwofdm {

namespace {

std::string number_token(double v)
{
    char buf[40];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc{})
        throw std::runtime_error("number_token: conversion failed");
    return {buf, end};
}

std::string axis_token(const AxisPoint& axis)
{
    std::string token;
    token += "snr=" + number_token(axis.snr_db);
    token += ";a=" + number_token(axis.doppler_scale);
    token += ";m=" + std::to_string(axis.subblocks);
    token += ";n=" + std::to_string(axis.subbands);
    token += ";alg=";
    token += algorithm_name(axis.algorithm);
    token += ";mu=" + number_token(axis.step_size);
    return token;
}

PilotLayout layout_for(const SystemConfig& system, const AxisPoint& axis)
{
    switch (axis.algorithm) {
    case Algorithm::Adaptive:
        return PilotLayout::contiguous(system.num_subcarriers, system.pilots_per_band);
    case Algorithm::EigenWideband:
        return PilotLayout::per_subband(system.num_subcarriers, axis.subbands,
                                        system.pilots_per_band);
    default:
        return PilotLayout::equispaced(system.num_subcarriers, system.pilots_per_band);
    }
}

struct DrawnBlock {
    cvec pilot_symbols;
    std::vector<int> data_symbols; ///< transmitted point indices, ascending data order
    OfdmBlock block;
    cvec taps;
};

/// Draws one block's randomness in a fixed order (pilot symbols, data bits,
/// channel taps, then the noise inside synthesize_received), so any
/// consumer replaying the same seed sees the same realization.
DrawnBlock draw_block(const SystemConfig& system, const PilotLayout& layout,
                      const PskConstellation& constellation, const cvec* fixed_taps, Rng& rng)
{
    DrawnBlock out;
    out.pilot_symbols.resize(static_cast<std::size_t>(layout.count()));
    for (cplx& p : out.pilot_symbols)
        p = constellation.point(
            static_cast<int>(rng.uniform_index(static_cast<std::uint32_t>(constellation.order()))));

    const int k_count = system.num_subcarriers;
    const int num_data = k_count - 1 - layout.count();
    std::vector<std::uint8_t> bits(
        static_cast<std::size_t>(num_data) *
        static_cast<std::size_t>(constellation.bits_per_symbol()));
    for (std::uint8_t& b : bits)
        b = static_cast<std::uint8_t>(rng.bit());
    out.data_symbols = bits_to_symbols(bits, constellation);

    cvec info(static_cast<std::size_t>(k_count - 1));
    std::size_t pilot_i = 0;
    std::size_t data_i = 0;
    for (int k = 1; k < k_count; ++k) {
        if (layout.is_pilot(k))
            info[static_cast<std::size_t>(k - 1)] = out.pilot_symbols[pilot_i++];
        else
            info[static_cast<std::size_t>(k - 1)] =
                constellation.point(out.data_symbols[data_i++]);
    }
    out.block = make_ofdm_block(info, constellation);
    out.taps = fixed_taps ? *fixed_taps : draw_channel_taps(system.num_taps, rng);
    return out;
}

struct BlockOutcome {
    long long bit_errors = 0;
    long long bits = 0;
    double lambda_sum = 0.0;
    int lambda_terms = 0;
    int degenerate = 0;
};

BlockOutcome simulate_block(const SystemConfig& system, const AxisPoint& axis,
                            const PilotLayout& layout, const PskConstellation& constellation,
                            const LinkGeometry& geometry, const cvec* fixed_taps,
                            std::uint64_t seed)
{
    Rng rng(seed);
    const DrawnBlock drawn = draw_block(system, layout, constellation, fixed_taps, rng);

    ChannelRealization channel;
    channel.taps = drawn.taps;
    channel.doppler_scale = axis.doppler_scale;
    channel.mode = system.doppler_mode;
    channel.noise_variance = noise_variance_for_snr(axis.snr_db);
    const cvec received = synthesize_received(drawn.block, channel, geometry, rng);
    const PartialDemodMatrix demod = partial_fft_demodulate(received, axis.subblocks);

    BlockOutcome out;
    std::vector<int> decisions;
    switch (axis.algorithm) {
    case Algorithm::SingleFft:
        decisions = detect_block(demod, uniform_weights(axis.subblocks), layout, constellation);
        break;
    case Algorithm::Eigen:
    case Algorithm::EigenWideband: {
        const int bands = axis.algorithm == Algorithm::Eigen ? 1 : axis.subbands;
        const WeightSolution solution =
            solve_weights_subband(demod, layout, drawn.pilot_symbols, bands);
        for (const SubbandWeights& sb : solution.subbands) {
            out.lambda_sum += sb.lambda_min;
            ++out.lambda_terms;
            if (sb.degenerate)
                ++out.degenerate;
        }
        decisions = detect_block(demod, solution, layout, constellation);
        break;
    }
    case Algorithm::Adaptive: {
        AdaptiveResult result = solve_weights_adaptive(demod, layout, drawn.pilot_symbols,
                                                       axis.step_size, constellation);
        decisions = std::move(result.data_decisions);
        break;
    }
    default:
        throw std::invalid_argument("simulate_block: unknown algorithm");
    }

    if (decisions.size() != drawn.data_symbols.size())
        throw std::logic_error("simulate_block: decision count mismatch");
    for (std::size_t i = 0; i < decisions.size(); ++i) {
        const std::uint32_t tx = constellation.bits_of(drawn.data_symbols[i]);
        const std::uint32_t rx = constellation.bits_of(decisions[i]);
        out.bit_errors += std::popcount(tx ^ rx);
    }
    out.bits = static_cast<long long>(decisions.size()) * constellation.bits_per_symbol();
    return out;
}

void validate_axis(const ExperimentSpec& spec, const AxisPoint& axis)
{
    const auto& system = spec.system;
    if (std::isnan(axis.snr_db))
        throw std::invalid_argument("ExperimentSpec: SNR must not be NaN");
    if (!(axis.doppler_scale >= 0.0) || std::isinf(axis.doppler_scale))
        throw std::invalid_argument("ExperimentSpec: Doppler scale must be finite and >= 0");
    if (axis.subblocks < 1 || axis.subblocks > 64 ||
        system.num_subcarriers % axis.subblocks != 0)
        throw std::invalid_argument(
            "ExperimentSpec: segment count must divide the block size and be at most 64");
    if (axis.subbands < 1 || system.num_subcarriers % axis.subbands != 0)
        throw std::invalid_argument("ExperimentSpec: subband count must divide the block size");
    if (!(axis.step_size >= 0.0) || std::isinf(axis.step_size))
        throw std::invalid_argument("ExperimentSpec: step size must be finite and >= 0");
}

std::optional<cvec> fixed_taps_for(const ExperimentSpec& spec, std::uint64_t axis_hash)
{
    if (!spec.system.channel_fixed)
        return std::nullopt;
    Rng rng(derive_seed(spec.master_seed, axis_hash ^ fnv1a("fixed-taps"), 0));
    return draw_channel_taps(spec.system.num_taps, rng);
}

} // namespace

std::string_view algorithm_name(Algorithm algorithm)
{
    switch (algorithm) {
    case Algorithm::SingleFft:
        return "single-fft";
    case Algorithm::Eigen:
        return "eigen";
    case Algorithm::EigenWideband:
        return "eigen-wideband";
    case Algorithm::Adaptive:
        return "adaptive";
    }
    throw std::invalid_argument("algorithm_name: unknown algorithm");
}

std::optional<Algorithm> algorithm_from_name(std::string_view name)
{
    if (name == "single-fft")
        return Algorithm::SingleFft;
    if (name == "eigen")
        return Algorithm::Eigen;
    if (name == "eigen-wideband")
        return Algorithm::EigenWideband;
    if (name == "adaptive")
        return Algorithm::Adaptive;
    return std::nullopt;
}

void validate_spec(const ExperimentSpec& spec)
{
    const auto& system = spec.system;
    if (!is_power_of_two(system.num_subcarriers) || system.num_subcarriers < 4)
        throw std::invalid_argument("ExperimentSpec: block size must be a power of two >= 4");
    if (!is_power_of_two(system.constellation_order) || system.constellation_order < 2)
        throw std::invalid_argument("ExperimentSpec: constellation order must be a power of two");
    if (!(system.bandwidth_hz > 0.0) || !(system.carrier_hz >= 0.0))
        throw std::invalid_argument("ExperimentSpec: bad signal geometry");
    if (system.num_taps < 1 || system.num_taps > system.num_subcarriers)
        throw std::invalid_argument("ExperimentSpec: tap count must be in [1, K]");
    if (system.pilots_per_band < 1)
        throw std::invalid_argument("ExperimentSpec: need at least one pilot");
    if (spec.blocks_per_point < 1)
        throw std::invalid_argument("ExperimentSpec: need at least one block per point");
    if (spec.workers < 0)
        throw std::invalid_argument("ExperimentSpec: worker count must be >= 0");
    if (spec.snr_db_axis.empty() || spec.doppler_axis.empty() || spec.subblock_axis.empty() ||
        spec.subband_axis.empty() || spec.algorithm_axis.empty() || spec.step_size_axis.empty())
        throw std::invalid_argument("ExperimentSpec: every axis needs at least one value");
    for (const AxisPoint& axis : enumerate_axes(spec))
        validate_axis(spec, axis);
}

std::vector<AxisPoint> enumerate_axes(const ExperimentSpec& spec)
{
    std::vector<double> snrs = spec.snr_db_axis;
    std::vector<double> dopplers = spec.doppler_axis;
    std::vector<int> subblocks = spec.subblock_axis;
    std::vector<int> subbands = spec.subband_axis;
    std::vector<Algorithm> algorithms = spec.algorithm_axis;
    std::vector<double> step_sizes = spec.step_size_axis;
    std::sort(snrs.begin(), snrs.end());
    std::sort(dopplers.begin(), dopplers.end());
    std::sort(subblocks.begin(), subblocks.end());
    std::sort(subbands.begin(), subbands.end());
    std::sort(algorithms.begin(), algorithms.end());
    std::sort(step_sizes.begin(), step_sizes.end());

    std::vector<AxisPoint> points;
    std::vector<std::string> seen;
    for (double snr : snrs)
        for (double a : dopplers)
            for (int m : subblocks)
                for (int n : subbands)
                    for (Algorithm alg : algorithms)
                        for (double mu : step_sizes) {
                            AxisPoint axis;
                            axis.snr_db = snr;
                            axis.doppler_scale = a;
                            axis.subblocks = m;
                            axis.subbands = alg == Algorithm::EigenWideband ? n : 1;
                            axis.algorithm = alg;
                            axis.step_size = alg == Algorithm::Adaptive ? mu : 0.0;
                            std::string token = axis_token(axis);
                            bool duplicate = false;
                            for (const std::string& t : seen)
                                if (t == token) {
                                    duplicate = true;
                                    break;
                                }
                            if (!duplicate) {
                                seen.push_back(std::move(token));
                                points.push_back(axis);
                            }
                        }
    return points;
}

BerRecord run_point(const ExperimentSpec& spec, const AxisPoint& axis)
{
    validate_axis(spec, axis);
    const SystemConfig& system = spec.system;
    const PskConstellation constellation(system.constellation_order);
    const LinkGeometry geometry{system.bandwidth_hz, system.carrier_hz, system.num_subcarriers};
    const PilotLayout layout = layout_for(system, axis);
    const std::uint64_t axis_hash = fnv1a(axis_token(axis));
    const std::optional<cvec> fixed_taps = fixed_taps_for(spec, axis_hash);
    const cvec* taps_ptr = fixed_taps ? &*fixed_taps : nullptr;

    const int blocks = spec.blocks_per_point;
    std::vector<BlockOutcome> outcomes(static_cast<std::size_t>(blocks));

    auto run_range = [&](std::atomic<int>& next) {
        for (;;) {
            const int b = next.fetch_add(1, std::memory_order_relaxed);
            if (b >= blocks)
                return;
            outcomes[static_cast<std::size_t>(b)] =
                simulate_block(system, axis, layout, constellation, geometry, taps_ptr,
                               derive_seed(spec.master_seed, axis_hash,
                                           static_cast<std::uint64_t>(b)));
        }
    };

    int thread_count = spec.workers > 0
                           ? spec.workers
                           : static_cast<int>(std::thread::hardware_concurrency());
    if (thread_count < 1)
        thread_count = 1;
    thread_count = std::min(thread_count, blocks);

    std::atomic<int> next{0};
    if (thread_count == 1) {
        run_range(next);
    } else {
        std::vector<std::exception_ptr> errors(static_cast<std::size_t>(thread_count));
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(thread_count));
        for (int t = 0; t < thread_count; ++t)
            pool.emplace_back([&, t] {
                try {
                    run_range(next);
                } catch (...) {
                    errors[static_cast<std::size_t>(t)] = std::current_exception();
                    next.store(blocks, std::memory_order_relaxed); // stop the others
                }
            });
        for (std::thread& th : pool)
            th.join();
        for (const std::exception_ptr& e : errors)
            if (e)
                std::rethrow_exception(e);
    }

    BerRecord record;
    record.axis = axis;
    record.pilot_count = layout.count();
    record.blocks = blocks;
    double lambda_sum = 0.0;
    long long lambda_terms = 0;
    for (const BlockOutcome& o : outcomes) {
        record.bit_errors += o.bit_errors;
        record.total_bits += o.bits;
        lambda_sum += o.lambda_sum;
        lambda_terms += o.lambda_terms;
        record.degenerate_count += o.degenerate;
    }
    record.ber = record.total_bits > 0
                     ? static_cast<double>(record.bit_errors) / static_cast<double>(record.total_bits)
                     : 0.0;
    // Per-block bit counts are identical within a point, so `ber` is also the
    // mean per-block error rate; its sampling error follows from the spread of
    // the per-block rates (block fading makes this far wider than binomial).
    if (blocks > 1) {
        double squared_dev = 0.0;
        for (const BlockOutcome& o : outcomes) {
            const double block_ber =
                o.bits > 0 ? static_cast<double>(o.bit_errors) / static_cast<double>(o.bits) : 0.0;
            squared_dev += (block_ber - record.ber) * (block_ber - record.ber);
        }
        record.ber_standard_error =
            std::sqrt(squared_dev / (static_cast<double>(blocks - 1) * static_cast<double>(blocks)));
    } else {
        record.ber_standard_error = std::numeric_limits<double>::quiet_NaN();
    }
    record.lambda_min_mean = lambda_terms > 0
                                 ? lambda_sum / static_cast<double>(lambda_terms)
                                 : std::numeric_limits<double>::quiet_NaN();
    return record;
}

std::vector<BerRecord> run_sweep(const ExperimentSpec& spec,
                                 const std::function<void(const BerRecord&)>& sink)
{
    validate_spec(spec);
    std::vector<BerRecord> records;
    for (const AxisPoint& axis : enumerate_axes(spec)) {
        BerRecord record = run_point(spec, axis);
        if (sink)
            sink(record);
        records.push_back(record);
    }
    return records;
}

double coherent_oracle_ber(const ExperimentSpec& spec, double snr_db)
{
    const SystemConfig& system = spec.system;
    if (system.doppler_mode != DopplerMode::TimeInvariant)
        throw std::invalid_argument("coherent_oracle_ber: needs the time-invariant mode");
    const PskConstellation constellation(system.constellation_order);
    const LinkGeometry geometry{system.bandwidth_hz, system.carrier_hz, system.num_subcarriers};
    const PilotLayout layout =
        PilotLayout::equispaced(system.num_subcarriers, system.pilots_per_band);

    // Same substream as the M = 1 single-FFT point at this SNR, so the two
    // receivers see identical channel and noise realizations block by block.
    AxisPoint axis;
    axis.snr_db = snr_db;
    axis.doppler_scale = 0.0;
    axis.subblocks = 1;
    axis.subbands = 1;
    axis.algorithm = Algorithm::SingleFft;
    axis.step_size = 0.0;
    const std::uint64_t axis_hash = fnv1a(axis_token(axis));
    const std::optional<cvec> fixed_taps = fixed_taps_for(spec, axis_hash);
    const cvec* taps_ptr = fixed_taps ? &*fixed_taps : nullptr;
    const double noise_variance = noise_variance_for_snr(snr_db);

    long long bit_errors = 0;
    long long total_bits = 0;
    for (int b = 0; b < spec.blocks_per_point; ++b) {
        Rng rng(derive_seed(spec.master_seed, axis_hash, static_cast<std::uint64_t>(b)));
        const DrawnBlock drawn = draw_block(system, layout, constellation, taps_ptr, rng);
        ChannelRealization channel;
        channel.taps = drawn.taps;
        channel.doppler_scale = 0.0;
        channel.mode = DopplerMode::TimeInvariant;
        channel.noise_variance = noise_variance;
        cvec received = synthesize_received(drawn.block, channel, geometry, rng);

        const cvec spectrum = dft_unitary(received);
        const cvec response = freq_response(drawn.taps, system.num_subcarriers);

        std::size_t data_i = 0;
        for (int k = 1; k < system.num_subcarriers; ++k) {
            if (layout.is_pilot(k))
                continue;
            const int tx = drawn.data_symbols[data_i++];
            if (std::abs(response[static_cast<std::size_t>(k)]) < 1e-12)
                continue;
            // Invert the differential relation x_k = H_k b_k d_{k-1} + n_k
            // with genie H_k and d_{k-1}, so only the noise on subcarrier k
            // perturbs the slice.
            const cplx reference = response[static_cast<std::size_t>(k)] *
                                   drawn.block.coded[static_cast<std::size_t>(k - 1)];
            const int detected =
                constellation.nearest(spectrum[static_cast<std::size_t>(k)] / reference);
            bit_errors += std::popcount(constellation.bits_of(tx) ^
                                        constellation.bits_of(detected));
            total_bits += constellation.bits_per_symbol();
        }
    }
    return total_bits > 0 ? static_cast<double>(bit_errors) / static_cast<double>(total_bits)
                          : 0.0;
}

} // namespace uwofdm
