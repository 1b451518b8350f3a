#include "parrondo/gth.hpp"

#include <Eigen/Core>
#include <stdexcept>

#include "parrondo/rational.hpp"
#include "parrondo/solver.hpp"

namespace parrondo {

namespace {

using row_major_matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using block_map = Eigen::Map<row_major_matrix, Eigen::Unaligned, Eigen::OuterStride<>>;

// Panel width balancing the O(n^2 b) eager updates against matrix-product
// efficiency; at the dimensions seen here (up to ~15000) the eager share
// stays around two percent of the flops.
constexpr int kPanel = 112;

}  // namespace

std::vector<double> gth_dense(std::vector<double>& A, int n) {
    if (n <= 0) throw std::invalid_argument("empty matrix");
    if (std::size_t(n) * n != A.size()) throw std::invalid_argument("buffer is not dim x dim");
    if (n == 1) return {1.0};

    auto at = [&](int i, int j) -> double& { return A[std::size_t(i) * n + j]; };

    // Eliminate states n-1 .. 1 in panels. Within a panel [lo..hi] the
    // rank-1 trailing updates are applied eagerly only where later panel
    // steps will read: the in-panel columns of every row, and the left
    // portion of the panel rows. The remaining update of the leading
    // lo x lo block is a single accumulated product of the scaled-column
    // panel with the panel rows.
    for (int hi = n - 1; hi >= 1; hi = std::max(1, hi - kPanel + 1) - 1) {
        const int lo = std::max(1, hi - kPanel + 1);
        for (int k = hi; k >= lo; --k) {
            const double* rowk = &A[std::size_t(k) * n];
            double s = 0.0;
            for (int j = 0; j < k; ++j) s += rowk[j];
            if (!(s > 0.0))
                throw numerical_failure_error("elimination hit a zero pivot row");
            const double inv = 1.0 / s;
            for (int i = 0; i < k; ++i) at(i, k) *= inv;
            for (int i = 0; i < k; ++i) {
                const double f = at(i, k);
                if (f == 0.0) continue;
                double* rowi = &A[std::size_t(i) * n];
                for (int j = lo; j < k; ++j) rowi[j] += f * rowk[j];
            }
            for (int i = lo; i < k; ++i) {
                const double f = at(i, k);
                if (f == 0.0) continue;
                double* rowi = &A[std::size_t(i) * n];
                for (int j = 0; j < lo; ++j) rowi[j] += f * rowk[j];
            }
        }
        const int width = hi - lo + 1;
        block_map head(A.data(), lo, lo, Eigen::OuterStride<>(n));
        block_map cols(A.data() + lo, lo, width, Eigen::OuterStride<>(n));
        block_map rows(A.data() + std::size_t(lo) * n, width, lo, Eigen::OuterStride<>(n));
        head.noalias() += cols * rows;
    }

    std::vector<double> pi(n);
    pi[0] = 1.0;
    double total = 1.0;
    for (int k = 1; k < n; ++k) {
        double w = 0.0;
        for (int i = 0; i < k; ++i) w += pi[i] * at(i, k);
        pi[k] = w;
        total += w;
    }
    const double inv = 1.0 / total;
    for (double& v : pi) v *= inv;
    return pi;
}

template <class S>
std::vector<S> gth_dense_generic(std::vector<S>& A, int n) {
    if (n <= 0) throw std::invalid_argument("empty matrix");
    if (std::size_t(n) * n != A.size()) throw std::invalid_argument("buffer is not dim x dim");
    auto at = [&](int i, int j) -> S& { return A[std::size_t(i) * n + j]; };

    for (int k = n - 1; k >= 1; --k) {
        S s(0);
        for (int j = 0; j < k; ++j) s += at(k, j);
        if (s == S(0)) throw numerical_failure_error("elimination hit a zero pivot row");
        for (int i = 0; i < k; ++i) at(i, k) /= s;
        for (int i = 0; i < k; ++i) {
            const S f = at(i, k);
            if (f == S(0)) continue;
            for (int j = 0; j < k; ++j) at(i, j) += f * at(k, j);
        }
    }

    std::vector<S> pi(n, S(0));
    pi[0] = S(1);
    S total(1);
    for (int k = 1; k < n; ++k) {
        S w(0);
        for (int i = 0; i < k; ++i) w += pi[i] * at(i, k);
        pi[k] = w;
        total += w;
    }
    for (S& v : pi) v /= total;
    return pi;
}

template std::vector<double> gth_dense_generic<double>(std::vector<double>&, int);
template std::vector<rational> gth_dense_generic<rational>(std::vector<rational>&, int);

}  // namespace parrondo
