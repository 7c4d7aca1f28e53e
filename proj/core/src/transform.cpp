#include "uwofdm/transform.hpp"

#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <unordered_map>

namespace uwofdm {

namespace {

struct FftPlan {
    std::vector<int> bit_reversal;
    cvec twiddles; // exp(-j*2*pi*i/n), i in [0, n/2)
};

const FftPlan& plan_for(int n)
{
    static std::mutex mutex;
    static std::unordered_map<int, std::unique_ptr<FftPlan>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[n];
    if (!slot) {
        auto plan = std::make_unique<FftPlan>();
        plan->bit_reversal.resize(static_cast<std::size_t>(n));
        int log2n = 0;
        while ((1 << log2n) < n)
            ++log2n;
        for (int i = 0; i < n; ++i) {
            int rev = 0;
            for (int b = 0; b < log2n; ++b)
                rev |= ((i >> b) & 1) << (log2n - 1 - b);
            plan->bit_reversal[static_cast<std::size_t>(i)] = rev;
        }
        plan->twiddles.resize(static_cast<std::size_t>(n / 2));
        for (int i = 0; i < n / 2; ++i) {
            const double phase = -2.0 * std::numbers::pi * i / n;
            plan->twiddles[static_cast<std::size_t>(i)] = {std::cos(phase), std::sin(phase)};
        }
        slot = std::move(plan);
    }
    return *slot;
}

} // namespace

bool is_power_of_two(int n)
{
    return n > 0 && (n & (n - 1)) == 0;
}

void fft_pow2(std::span<cplx> data, bool inverse)
{
    const int n = static_cast<int>(data.size());
    if (!is_power_of_two(n))
        throw std::invalid_argument("fft_pow2: length must be a power of two");
    if (n == 1)
        return;
    const FftPlan& plan = plan_for(n);
    for (int i = 0; i < n; ++i) {
        const int j = plan.bit_reversal[static_cast<std::size_t>(i)];
        if (j > i)
            std::swap(data[static_cast<std::size_t>(i)], data[static_cast<std::size_t>(j)]);
    }
    for (int len = 2; len <= n; len <<= 1) {
        const int half = len / 2;
        const int stride = n / len;
        for (int base = 0; base < n; base += len) {
            for (int j = 0; j < half; ++j) {
                cplx w = plan.twiddles[static_cast<std::size_t>(j * stride)];
                if (inverse)
                    w = std::conj(w);
                const cplx u = data[static_cast<std::size_t>(base + j)];
                const cplx v = data[static_cast<std::size_t>(base + j + half)] * w;
                data[static_cast<std::size_t>(base + j)] = u + v;
                data[static_cast<std::size_t>(base + j + half)] = u - v;
            }
        }
    }
}

cvec dft_unitary(std::span<const cplx> input)
{
    cvec out(input.begin(), input.end());
    fft_pow2(out, false);
    const double scale = 1.0 / std::sqrt(static_cast<double>(out.size()));
    for (cplx& v : out)
        v *= scale;
    return out;
}

cvec idft_unitary(std::span<const cplx> input)
{
    cvec out(input.begin(), input.end());
    fft_pow2(out, true);
    const double scale = 1.0 / std::sqrt(static_cast<double>(out.size()));
    for (cplx& v : out)
        v *= scale;
    return out;
}

PartialDemodMatrix::PartialDemodMatrix(int subblocks, int num_subcarriers)
    : subblocks_(subblocks), num_subcarriers_(num_subcarriers)
{
    if (subblocks < 1 || num_subcarriers < 1)
        throw std::invalid_argument("PartialDemodMatrix: sizes must be positive");
    values_.assign(static_cast<std::size_t>(subblocks) * static_cast<std::size_t>(num_subcarriers),
                   cplx{0.0, 0.0});
}

std::span<const cplx> PartialDemodMatrix::row(int m) const
{
    if (m < 0 || m >= subblocks_)
        throw std::invalid_argument("PartialDemodMatrix::row: index out of range");
    return {values_.data() + static_cast<std::size_t>(m) * static_cast<std::size_t>(num_subcarriers_),
            static_cast<std::size_t>(num_subcarriers_)};
}

cvec PartialDemodMatrix::column(int k) const
{
    if (k < 0 || k >= num_subcarriers_)
        throw std::invalid_argument("PartialDemodMatrix::column: index out of range");
    cvec col(static_cast<std::size_t>(subblocks_));
    for (int m = 0; m < subblocks_; ++m)
        col[static_cast<std::size_t>(m)] = at(m, k);
    return col;
}

PartialDemodMatrix partial_fft_demodulate(std::span<const cplx> received, int subblocks)
{
    const int k = static_cast<int>(received.size());
    if (!is_power_of_two(k))
        throw std::invalid_argument("partial_fft_demodulate: block size must be a power of two");
    if (subblocks < 1 || k % subblocks != 0)
        throw std::invalid_argument("partial_fft_demodulate: segment count must divide block size");
    const int segment = k / subblocks;
    PartialDemodMatrix out(subblocks, k);
    cvec buffer(static_cast<std::size_t>(k));
    const double scale = 1.0 / std::sqrt(static_cast<double>(k));
    for (int m = 0; m < subblocks; ++m) {
        buffer.assign(static_cast<std::size_t>(k), cplx{0.0, 0.0});
        for (int n = 0; n < segment; ++n) {
            const int idx = m * segment + n;
            buffer[static_cast<std::size_t>(idx)] = received[static_cast<std::size_t>(idx)];
        }
        fft_pow2(buffer, false);
        for (int bin = 0; bin < k; ++bin)
            out.at(m, bin) = buffer[static_cast<std::size_t>(bin)] * scale;
    }
    return out;
}

cplx combine(const PartialDemodMatrix& demod, std::span<const cplx> weights, int subcarrier)
{
    if (static_cast<int>(weights.size()) != demod.subblocks())
        throw std::invalid_argument("combine: weight length must match segment count");
    if (subcarrier < 0 || subcarrier >= demod.num_subcarriers())
        throw std::invalid_argument("combine: subcarrier out of range");
    double norm2 = 0.0;
    for (const cplx& w : weights)
        norm2 += std::norm(w);
    if (norm2 == 0.0)
        throw std::invalid_argument("combine: weight vector must be nonzero");
    cplx acc{0.0, 0.0};
    for (int m = 0; m < demod.subblocks(); ++m)
        acc += std::conj(weights[static_cast<std::size_t>(m)]) * demod.at(m, subcarrier);
    return acc;
}

} // namespace uwofdm
