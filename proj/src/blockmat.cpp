#include "cvar/blockmat.hpp"

#include <Eigen/Cholesky>
#include <numeric>
#include <string>

namespace cvar {

BlockPartition::BlockPartition(std::vector<int> sizes) : sizes_(std::move(sizes)) {
    if (sizes_.empty()) throw DimensionMismatch("block partition must be non-empty");
    offsets_.reserve(sizes_.size());
    for (int s : sizes_) {
        if (s < 1) throw DimensionMismatch("block sizes must be positive");
        offsets_.push_back(dim_);
        dim_ += s;
    }
}

BlockPartition BlockPartition::singletons_then_tail(int d, int tail) {
    std::vector<int> sizes(static_cast<size_t>(d), 1);
    if (tail > 0) sizes.push_back(tail);
    return BlockPartition(std::move(sizes));
}

Matrix BlockLdlFactors::dinv_dense() const {
    Matrix D = Matrix::Zero(partition.dim(), partition.dim());
    for (int j = 0; j < partition.num_blocks(); ++j)
        D.block(partition.offset(j), partition.offset(j), partition.size(j),
                partition.size(j)) = dinv_blocks[static_cast<size_t>(j)];
    return D;
}

Matrix BlockLdlFactors::reconstruct() const {
    const Matrix D = dinv_dense();
    return L * D * L.transpose();
}

bool is_symmetric(const Matrix& M, double rel_tol) {
    if (M.rows() != M.cols()) return false;
    const double scale = std::max(1.0, M.cwiseAbs().maxCoeff());
    return (M - M.transpose()).cwiseAbs().maxCoeff() <= rel_tol * scale;
}

BlockLdlFactors block_ldl(const Matrix& K, const BlockPartition& partition,
                          std::optional<Matrix> trailing_dinv) {
    const int n = static_cast<int>(K.rows());
    if (K.cols() != n) throw DimensionMismatch("block_ldl: matrix must be square");
    if (partition.dim() != n)
        throw DimensionMismatch("block_ldl: partition sums to " +
                                std::to_string(partition.dim()) + ", matrix dim is " +
                                std::to_string(n));
    if (!is_symmetric(K)) throw DimensionMismatch("block_ldl: matrix is not symmetric");

    const int nb = partition.num_blocks();
    const double pivot_tol = 1e-12 * std::max(1e-300, K.diagonal().maxCoeff());

    BlockLdlFactors f{partition, Matrix::Identity(n, n), {}};
    f.dinv_blocks.resize(static_cast<size_t>(nb));

    for (int j = 0; j < nb; ++j) {
        const int oj = partition.offset(j);
        const int sj = partition.size(j);

        if (j == nb - 1 && trailing_dinv) {
            if (trailing_dinv->rows() != sj || trailing_dinv->cols() != sj)
                throw DimensionMismatch("block_ldl: trailing block size mismatch");
            f.dinv_blocks[static_cast<size_t>(j)] = *trailing_dinv;
            break;
        }

        // Diagonal block: D_j = K_jj - sum_{h<j} L_jh D_h L_jh^T.
        Matrix Dj = K.block(oj, oj, sj, sj);
        for (int h = 0; h < j; ++h) {
            const int oh = partition.offset(h);
            const int sh = partition.size(h);
            const auto Ljh = f.L.block(oj, oh, sj, sh);
            Dj.noalias() -= Ljh * f.dinv_blocks[static_cast<size_t>(h)] * Ljh.transpose();
        }

        Matrix Dj_inv;
        if (sj == 1) {
            if (!(Dj(0, 0) > pivot_tol))
                throw NotPositiveDefinite("block_ldl: pivot " + std::to_string(j + 1) +
                                          " is not positive (sample covariance "
                                          "rank-deficient or order too large)");
            Dj_inv = Matrix::Constant(1, 1, 1.0 / Dj(0, 0));
        } else {
            Dj = 0.5 * (Dj + Dj.transpose());
            Eigen::LLT<Matrix> llt(Dj);
            if (llt.info() != Eigen::Success)
                throw NotPositiveDefinite("block_ldl: diagonal block " +
                                          std::to_string(j + 1) + " is not positive definite");
            Dj_inv = llt.solve(Matrix::Identity(sj, sj));
            Dj_inv = 0.5 * (Dj_inv + Dj_inv.transpose()).eval();
        }
        f.dinv_blocks[static_cast<size_t>(j)] = Dj;

        // Sub-diagonal column: L_ij = (K_ij - sum_{h<j} L_ih D_h L_jh^T) D_j^{-1}.
        for (int i = j + 1; i < nb; ++i) {
            const int oi = partition.offset(i);
            const int si = partition.size(i);
            Matrix Lij = K.block(oi, oj, si, sj);
            for (int h = 0; h < j; ++h) {
                const int oh = partition.offset(h);
                const int sh = partition.size(h);
                Lij.noalias() -= f.L.block(oi, oh, si, sh) *
                                 f.dinv_blocks[static_cast<size_t>(h)] *
                                 f.L.block(oj, oh, sj, sh).transpose();
            }
            f.L.block(oi, oj, si, sj) = Lij * Dj_inv;
        }
    }

    return f;
}

Matrix spd_inverse(const Matrix& M) {
    const int n = static_cast<int>(M.rows());
    if (M.cols() != n) throw DimensionMismatch("spd_inverse: matrix must be square");
    Eigen::LLT<Matrix> llt(M);
    if (llt.info() != Eigen::Success)
        throw NotPositiveDefinite("spd_inverse: matrix is not positive definite");
    Matrix inv = llt.solve(Matrix::Identity(n, n));
    return 0.5 * (inv + inv.transpose());
}

}  // namespace cvar
