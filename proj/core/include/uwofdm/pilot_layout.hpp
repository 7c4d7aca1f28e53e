#pragma once

#include <vector>

namespace uwofdm {

enum class PilotMode {
    Equispaced,
    Contiguous,
    PerSubband,
};

/// Placement of known pilot symbols inside a block of K subcarriers.
///
/// Subcarrier 0 carries the fixed differential reference and is never a
/// pilot; all indices are >= 1 and strictly increasing. The three layouts:
///
///  - equispaced: {1, P+1, ..., (I-1)P+1} with P = K/I
///  - contiguous: {1, ..., I}
///  - per-subband: the equispaced pattern replicated inside each of N
///    contiguous subbands of size K/N
class PilotLayout {
public:
    static PilotLayout equispaced(int num_subcarriers, int count);
    static PilotLayout contiguous(int num_subcarriers, int count);
    static PilotLayout per_subband(int num_subcarriers, int num_subbands, int count_per_subband);

    PilotMode mode() const { return mode_; }
    int num_subcarriers() const { return num_subcarriers_; }
    int count() const { return static_cast<int>(indices_.size()); }
    const std::vector<int>& indices() const { return indices_; }

    bool is_pilot(int subcarrier) const;

private:
    PilotLayout(PilotMode mode, int num_subcarriers, std::vector<int> indices);

    PilotMode mode_;
    int num_subcarriers_;
    std::vector<int> indices_;
};

} // namespace uwofdm
