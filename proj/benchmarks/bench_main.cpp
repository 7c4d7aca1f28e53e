#include <benchmark/benchmark.h>

#include <complex>
#include <vector>

#include "uwofdm/channel.hpp"
#include "uwofdm/constellation.hpp"
#include "uwofdm/eigen_hermitian.hpp"
#include "uwofdm/experiment.hpp"
#include "uwofdm/ofdm_block.hpp"
#include "uwofdm/rng.hpp"
#include "uwofdm/transform.hpp"
#include "uwofdm/types.hpp"

using namespace uwofdm;

namespace {

cvec random_signal(int length, Rng& rng)
{
    cvec signal(static_cast<std::size_t>(length));
    for (cplx& sample : signal)
        sample = rng.complex_gaussian(1.0);
    return signal;
}

OfdmBlock random_block(int num_subcarriers, Rng& rng)
{
    const PskConstellation qpsk(4);
    cvec info(static_cast<std::size_t>(num_subcarriers - 1));
    for (cplx& symbol : info)
        symbol = qpsk.point(static_cast<int>(rng.uniform_index(4)));
    return make_ofdm_block(info, qpsk);
}

void bm_fft(benchmark::State& state)
{
    const int n = static_cast<int>(state.range(0));
    Rng rng(1);
    cvec data = random_signal(n, rng);
    for (auto _ : state) {
        fft_pow2(data, false);
        benchmark::DoNotOptimize(data.data());
    }
    state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(bm_fft)->Arg(256)->Arg(1024)->Arg(4096);

void bm_partial_demod(benchmark::State& state)
{
    const int subblocks = static_cast<int>(state.range(0));
    Rng rng(2);
    const cvec received = random_signal(1024, rng);
    for (auto _ : state) {
        PartialDemodMatrix demod = partial_fft_demodulate(received, subblocks);
        benchmark::DoNotOptimize(demod.row(0).data());
    }
}
BENCHMARK(bm_partial_demod)->Arg(1)->Arg(8)->Arg(32);

void bm_hermitian_eig(benchmark::State& state)
{
    const int n = static_cast<int>(state.range(0));
    Rng rng(3);
    cvec matrix(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        matrix[static_cast<std::size_t>(i * n + i)] = cplx{rng.gaussian_pair().first, 0.0};
        for (int j = i + 1; j < n; ++j) {
            const cplx z = rng.complex_gaussian(1.0);
            matrix[static_cast<std::size_t>(i * n + j)] = z;
            matrix[static_cast<std::size_t>(j * n + i)] = std::conj(z);
        }
    }
    for (auto _ : state) {
        HermitianEig eig = hermitian_eig(matrix, n);
        benchmark::DoNotOptimize(eig.eigenvalues.data());
    }
}
BENCHMARK(bm_hermitian_eig)->Arg(2)->Arg(8)->Arg(32);

void bm_wideband_direct(benchmark::State& state)
{
    const int k = static_cast<int>(state.range(0));
    Rng rng(4);
    const OfdmBlock block = random_block(k, rng);
    const cvec taps = draw_channel_taps(48, rng);
    const cvec response = freq_response(taps, k);
    const LinkGeometry geometry{4096.0, 6000.0, k};
    const std::vector<double> freqs = geometry.subcarrier_freqs();
    for (auto _ : state) {
        cvec out = wideband_signal(block.coded, response, freqs, 2.5e-4, geometry.bandwidth_hz);
        benchmark::DoNotOptimize(out.data());
    }
}
BENCHMARK(bm_wideband_direct)->Arg(256)->Arg(1024);

void bm_wideband_fast(benchmark::State& state)
{
    const int k = static_cast<int>(state.range(0));
    Rng rng(4);
    const OfdmBlock block = random_block(k, rng);
    const cvec taps = draw_channel_taps(48, rng);
    const cvec response = freq_response(taps, k);
    const LinkGeometry geometry{4096.0, 6000.0, k};
    for (auto _ : state) {
        cvec out = wideband_signal_fast(block.coded, response, 2.5e-4, geometry);
        benchmark::DoNotOptimize(out.data());
    }
}
BENCHMARK(bm_wideband_fast)->Arg(256)->Arg(1024)->Arg(4096);

void bm_run_point(benchmark::State& state)
{
    ExperimentSpec spec;
    spec.system.num_subcarriers = 1024;
    spec.system.num_taps = 48;
    spec.system.pilots_per_band = 32;
    spec.system.doppler_mode = DopplerMode::Wideband;
    spec.snr_db_axis = {25.0};
    spec.doppler_axis = {2.5e-4};
    spec.subblock_axis = {8};
    spec.algorithm_axis = {static_cast<Algorithm>(state.range(0))};
    spec.step_size_axis = {0.05};
    spec.blocks_per_point = 10;
    spec.master_seed = 1;
    spec.workers = 1;
    const AxisPoint axis = enumerate_axes(spec)[0];
    for (auto _ : state) {
        BerRecord record = run_point(spec, axis);
        benchmark::DoNotOptimize(record.bit_errors);
    }
    state.SetItemsProcessed(state.iterations() * spec.blocks_per_point);
}
BENCHMARK(bm_run_point)
    ->Arg(static_cast<int>(Algorithm::SingleFft))
    ->Arg(static_cast<int>(Algorithm::Eigen))
    ->Arg(static_cast<int>(Algorithm::Adaptive));

} // namespace

BENCHMARK_MAIN();
