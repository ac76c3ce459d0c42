#ifndef CVAR_BLOCKMAT_HPP
#define CVAR_BLOCKMAT_HPP

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "cvar/errors.hpp"

namespace cvar {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Ordered block sizes partitioning a square matrix. For a CVAR(p) fit the
/// canonical partition is d singletons followed by one block of size p*d.
class BlockPartition {
public:
    explicit BlockPartition(std::vector<int> sizes);

    /// d singletons followed by one trailing block of size tail (omitted when
    /// tail == 0, i.e. the all-singleton partition).
    static BlockPartition singletons_then_tail(int d, int tail);

    int dim() const noexcept { return dim_; }
    int num_blocks() const noexcept { return static_cast<int>(sizes_.size()); }
    int size(int j) const { return sizes_[j]; }
    int offset(int j) const { return offsets_[j]; }
    const std::vector<int>& sizes() const noexcept { return sizes_; }

private:
    std::vector<int> sizes_;
    std::vector<int> offsets_;
    int dim_ = 0;
};

/// Result of the block LDL decomposition K = L * Dinv * L^T with L
/// unit-lower-block-triangular (exact identity blocks on the diagonal) and
/// Dinv block diagonal, stored per block. Singleton blocks of Dinv are the
/// reciprocals of the innovation variances when K is a concentration matrix.
struct BlockLdlFactors {
    BlockPartition partition;
    Matrix L;
    std::vector<Matrix> dinv_blocks;

    Matrix dinv_dense() const;
    Matrix reconstruct() const;  // L * Dinv * L^T
};

/// Block LDL decomposition with varying block sizes, no pivoting.
///
/// Singleton columns follow the scalar recursion
///   delta_j^{-1} = k_jj - sum_{h<j} l_jh delta_h^{-1} l_jh
///   l_ij = (k_ij - sum_{h<j} l_ih delta_h^{-1} l_jh) * delta_j
/// and block rows are computed vector-wise. When `trailing_dinv` is supplied
/// it is recorded as the last diagonal block instead of running the terminal
/// outer-cycle step (the caller typically knows it in closed form).
///
/// Throws NotPositiveDefinite when a singleton pivot falls at or below
/// 1e-12 * max(diag(K)), or a matrix block pivot is not positive definite.
BlockLdlFactors block_ldl(const Matrix& K, const BlockPartition& partition,
                          std::optional<Matrix> trailing_dinv = std::nullopt);

/// Inverse of a symmetric positive definite matrix via Cholesky; the result
/// is symmetrized. Throws NotPositiveDefinite.
Matrix spd_inverse(const Matrix& M);

/// Relative asymmetry check used by input validation (1e-12 tolerance).
bool is_symmetric(const Matrix& M, double rel_tol = 1e-12);

}  // namespace cvar

#endif
