#include "uwofdm/eigen_hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace uwofdm {

namespace {

constexpr int max_sweeps = 30;
constexpr double convergence_factor = 1e-12;
constexpr double hermiticity_factor = 1e-10;

double frobenius(std::span<const cplx> a)
{
    double sum = 0.0;
    for (const cplx& v : a)
        sum += std::norm(v);
    return std::sqrt(sum);
}

double off_diagonal_frobenius(const cvec& a, int n)
{
    double sum = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j)
                sum += std::norm(a[static_cast<std::size_t>(i * n + j)]);
    return std::sqrt(sum);
}

} // namespace

cvec HermitianEig::eigenvector(int col) const
{
    cvec v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        v[static_cast<std::size_t>(i)] = vector_entry(i, col);
    return v;
}

HermitianEig hermitian_eig(std::span<const cplx> matrix, int n)
{
    if (n < 1 || n > 64)
        throw std::invalid_argument("hermitian_eig: order must be in [1, 64]");
    if (static_cast<int>(matrix.size()) != n * n)
        throw std::invalid_argument("hermitian_eig: matrix size does not match order");

    const double norm_a = frobenius(matrix);
    const double herm_tol = hermiticity_factor * norm_a;
    for (int i = 0; i < n; ++i) {
        if (std::abs(matrix[static_cast<std::size_t>(i * n + i)].imag()) > herm_tol)
            throw std::invalid_argument("hermitian_eig: matrix is not Hermitian");
        for (int j = i + 1; j < n; ++j) {
            const cplx upper = matrix[static_cast<std::size_t>(i * n + j)];
            const cplx lower = matrix[static_cast<std::size_t>(j * n + i)];
            if (std::abs(upper - std::conj(lower)) > herm_tol)
                throw std::invalid_argument("hermitian_eig: matrix is not Hermitian");
        }
    }

    // Work on the Hermitian part so roundoff-level asymmetry cannot leak in.
    cvec a(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        a[static_cast<std::size_t>(i * n + i)] = matrix[static_cast<std::size_t>(i * n + i)].real();
        for (int j = i + 1; j < n; ++j) {
            const cplx v = 0.5 * (matrix[static_cast<std::size_t>(i * n + j)] +
                                  std::conj(matrix[static_cast<std::size_t>(j * n + i)]));
            a[static_cast<std::size_t>(i * n + j)] = v;
            a[static_cast<std::size_t>(j * n + i)] = std::conj(v);
        }
    }

    cvec vectors(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), cplx{0.0, 0.0});
    for (int i = 0; i < n; ++i)
        vectors[static_cast<std::size_t>(i * n + i)] = 1.0;

    const double threshold = convergence_factor * norm_a;
    bool converged = norm_a == 0.0 || n == 1;
    for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
        if (off_diagonal_frobenius(a, n) <= threshold) {
            converged = true;
            break;
        }
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const cplx gamma = a[static_cast<std::size_t>(p * n + q)];
                const double mag = std::abs(gamma);
                if (mag == 0.0)
                    continue;
                const double app = a[static_cast<std::size_t>(p * n + p)].real();
                const double aqq = a[static_cast<std::size_t>(q * n + q)].real();
                const cplx phase = gamma / mag;

                // Tangent of the rotation angle that zeroes a_pq; the root
                // with the smaller magnitude keeps the rotation stable.
                const double tau = (app - aqq) / (2.0 * mag);
                double t;
                if (tau >= 0.0)
                    t = -1.0 / (tau + std::sqrt(tau * tau + 1.0));
                else
                    t = 1.0 / (-tau + std::sqrt(tau * tau + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const cplx s = phase * (t * c);

                // A <- U^H A U and V <- V U with the unitary U equal to the
                // identity except U[p][p]=c, U[p][q]=s, U[q][p]=-conj(s),
                // U[q][q]=c.
                for (int r = 0; r < n; ++r) {
                    const cplx arp = a[static_cast<std::size_t>(r * n + p)];
                    const cplx arq = a[static_cast<std::size_t>(r * n + q)];
                    a[static_cast<std::size_t>(r * n + p)] = c * arp - std::conj(s) * arq;
                    a[static_cast<std::size_t>(r * n + q)] = s * arp + c * arq;
                }
                for (int r = 0; r < n; ++r) {
                    const cplx apr = a[static_cast<std::size_t>(p * n + r)];
                    const cplx aqr = a[static_cast<std::size_t>(q * n + r)];
                    a[static_cast<std::size_t>(p * n + r)] = c * apr - s * aqr;
                    a[static_cast<std::size_t>(q * n + r)] = std::conj(s) * apr + c * aqr;
                }
                for (int r = 0; r < n; ++r) {
                    const cplx vrp = vectors[static_cast<std::size_t>(r * n + p)];
                    const cplx vrq = vectors[static_cast<std::size_t>(r * n + q)];
                    vectors[static_cast<std::size_t>(r * n + p)] = c * vrp - std::conj(s) * vrq;
                    vectors[static_cast<std::size_t>(r * n + q)] = s * vrp + c * vrq;
                }
                a[static_cast<std::size_t>(p * n + q)] = 0.0;
                a[static_cast<std::size_t>(q * n + p)] = 0.0;
                a[static_cast<std::size_t>(p * n + p)] =
                    a[static_cast<std::size_t>(p * n + p)].real();
                a[static_cast<std::size_t>(q * n + q)] =
                    a[static_cast<std::size_t>(q * n + q)].real();
            }
        }
        if (off_diagonal_frobenius(a, n) <= threshold)
            converged = true;
    }
    if (!converged)
        throw std::runtime_error("hermitian_eig: Jacobi sweeps did not converge");

    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int lhs, int rhs) {
        return a[static_cast<std::size_t>(lhs * n + lhs)].real() <
               a[static_cast<std::size_t>(rhs * n + rhs)].real();
    });

    HermitianEig result;
    result.n = n;
    result.eigenvalues.resize(static_cast<std::size_t>(n));
    result.eigenvectors.resize(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        const int src = order[static_cast<std::size_t>(j)];
        result.eigenvalues[static_cast<std::size_t>(j)] =
            a[static_cast<std::size_t>(src * n + src)].real();
        for (int i = 0; i < n; ++i)
            result.eigenvectors[static_cast<std::size_t>(i * n + j)] =
                vectors[static_cast<std::size_t>(i * n + src)];
    }
    return result;
}

} // namespace uwofdm
