#include "uwofdm/pilot_layout.hpp"

#include <algorithm>
#include <stdexcept>

namespace uwofdm {

PilotLayout::PilotLayout(PilotMode mode, int num_subcarriers, std::vector<int> indices)
    : mode_(mode), num_subcarriers_(num_subcarriers), indices_(std::move(indices))
{
    int prev = 0;
    for (int k : indices_) {
        if (k <= prev)
            throw std::invalid_argument("PilotLayout: indices must be >= 1 and strictly increasing");
        if (k >= num_subcarriers_)
            throw std::invalid_argument("PilotLayout: index beyond block size");
        prev = k;
    }
}

PilotLayout PilotLayout::equispaced(int num_subcarriers, int count)
{
    return per_subband(num_subcarriers, 1, count);
}

PilotLayout PilotLayout::contiguous(int num_subcarriers, int count)
{
    if (count < 1 || count > num_subcarriers - 1)
        throw std::invalid_argument("PilotLayout: pilot count out of range");
    std::vector<int> indices(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i)
        indices[static_cast<std::size_t>(i)] = 1 + i;
    return {PilotMode::Contiguous, num_subcarriers, std::move(indices)};
}

PilotLayout PilotLayout::per_subband(int num_subcarriers, int num_subbands, int count_per_subband)
{
    if (num_subbands < 1 || num_subcarriers < 2)
        throw std::invalid_argument("PilotLayout: bad sizes");
    if (num_subcarriers % num_subbands != 0)
        throw std::invalid_argument("PilotLayout: subband count must divide block size");
    const int subband_size = num_subcarriers / num_subbands;
    if (count_per_subband < 1 || subband_size % count_per_subband != 0)
        throw std::invalid_argument("PilotLayout: pilot count must divide subband size");
    const int spacing = subband_size / count_per_subband;
    if (spacing < 2)
        throw std::invalid_argument("PilotLayout: pilots would leave no data subcarriers");
    std::vector<int> indices;
    indices.reserve(static_cast<std::size_t>(num_subbands * count_per_subband));
    for (int j = 0; j < num_subbands; ++j)
        for (int i = 0; i < count_per_subband; ++i)
            indices.push_back(j * subband_size + 1 + i * spacing);
    const PilotMode mode = num_subbands == 1 ? PilotMode::Equispaced : PilotMode::PerSubband;
    return {mode, num_subcarriers, std::move(indices)};
}

bool PilotLayout::is_pilot(int subcarrier) const
{
    return std::binary_search(indices_.begin(), indices_.end(), subcarrier);
}

} // namespace uwofdm
