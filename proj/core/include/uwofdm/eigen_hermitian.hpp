#pragma once

#include <span>
#include <vector>

#include "uwofdm/types.hpp"

namespace uwofdm {

/// Full eigendecomposition of a Hermitian matrix.
struct HermitianEig {
    int n = 0;
    std::vector<double> eigenvalues; ///< ascending
    cvec eigenvectors;               ///< row-major n x n; column j pairs with eigenvalues[j]

    cplx vector_entry(int row, int col) const
    {
        return eigenvectors[static_cast<std::size_t>(row) * static_cast<std::size_t>(n) +
                            static_cast<std::size_t>(col)];
    }
    cvec eigenvector(int col) const;
};

/// Eigendecomposition by cyclic complex Jacobi rotations.
///
/// `matrix` is row-major n x n with n in [1, 64] and must be Hermitian within
/// 1e-10 * ||A||_F elementwise (std::invalid_argument otherwise). Sweeps run
/// until the off-diagonal Frobenius norm falls below 1e-12 * ||A||_F; if 30
/// sweeps do not get there a std::runtime_error is thrown. Eigenvalues come
/// back ascending with orthonormal eigenvectors.
HermitianEig hermitian_eig(std::span<const cplx> matrix, int n);

} // namespace uwofdm
