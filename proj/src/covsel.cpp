#include "cvar/covsel.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <string>

namespace cvar {

namespace {

Matrix submatrix(const Matrix& M, const std::vector<int>& idx) {
    Matrix out(idx.size(), idx.size());
    for (size_t a = 0; a < idx.size(); ++a)
        for (size_t b = 0; b < idx.size(); ++b)
            out(static_cast<int>(a), static_cast<int>(b)) =
                M(idx[a], idx[b]);
    return out;
}

void add_embedded(Matrix& target, const Matrix& block, const std::vector<int>& idx,
                  double sign) {
    for (size_t a = 0; a < idx.size(); ++a)
        for (size_t b = 0; b < idx.size(); ++b)
            target(idx[a], idx[b]) += sign * block(static_cast<int>(a),
                                                   static_cast<int>(b));
}

Matrix invert_clique_moment(const Matrix& block, const std::string& what) {
    Eigen::LLT<Matrix> llt(block);
    if (llt.info() != Eigen::Success)
        throw SingularCliqueMoment("covariance selection: singular product moment on " +
                                   what);
    Matrix inv = llt.solve(Matrix::Identity(block.rows(), block.cols()));
    return 0.5 * (inv + inv.transpose());
}

// K_hat = scale * ( sum_C [S_C^{-1}]^V - sum_S [S_S^{-1}]^V ) over the given
// index sets; non-edge positions are never written, so they stay exact zeros.
Matrix embedding_formula(const Matrix& S, const std::vector<std::vector<int>>& cliques,
                         const std::vector<std::vector<int>>& separators, double scale) {
    Matrix K = Matrix::Zero(S.rows(), S.cols());
    for (const auto& C : cliques)
        add_embedded(K, invert_clique_moment(submatrix(S, C), "a clique"), C, scale);
    for (const auto& Ssep : separators)
        if (!Ssep.empty())
            add_embedded(K, invert_clique_moment(submatrix(S, Ssep), "a separator"),
                         Ssep, -scale);
    return K;
}

}  // namespace

CovselResult covsel_decomposable(const Matrix& S, const JunctionTree& jt, int n) {
    size_t max_clique = 0;
    for (const auto& C : jt.cliques) max_clique = std::max(max_clique, C.size());
    if (n <= static_cast<int>(max_clique))
        throw CliqueTooLarge("covsel_decomposable: sample size must exceed the "
                             "maximum clique size");
    CovselResult res;
    res.structure = jt;
    res.K_hat = embedding_formula(S, jt.cliques, jt.separators, double(n));
    res.Sigma_hat = spd_inverse(res.K_hat);
    return res;
}

CovselResult covsel_lagged(const AutocovSet& acs, const JunctionTree& jt, int p, int n) {
    const int d = acs.d;
    const int D = (p + 1) * d;
    const int n_eff = n - p;

    std::vector<int> lagged;
    for (int i = d; i < D; ++i) lagged.push_back(i);
    std::vector<std::vector<int>> ext_cliques, ext_seps;
    size_t max_ext = 0;
    for (const auto& C : jt.cliques) {
        auto Cx = C;
        Cx.insert(Cx.end(), lagged.begin(), lagged.end());
        max_ext = std::max(max_ext, Cx.size());
        ext_cliques.push_back(std::move(Cx));
    }
    for (const auto& S : jt.separators) {
        auto Sx = S;
        Sx.insert(Sx.end(), lagged.begin(), lagged.end());
        ext_seps.push_back(std::move(Sx));
    }
    if (n_eff <= static_cast<int>(max_ext))
        throw CliqueTooLarge("covsel_lagged: effective sample size must exceed the "
                             "maximum extended clique size");

    const Matrix S_full = double(n_eff) * assemble_block_toeplitz(acs, p);
    CovselResult res;
    res.structure = jt;
    res.lag_extension = p;
    res.K_hat = embedding_formula(S_full, ext_cliques, ext_seps, double(n_eff));
    res.Sigma_hat = spd_inverse(res.K_hat);
    return res;
}

CovselResult covsel_lagged(const Dataset& data, const JunctionTree& jt, int p,
                           bool standardize) {
    const AutocovSet acs = autocovariances(data, p, standardize);
    return covsel_lagged(acs, jt, p, data.n());
}

CovselResult ips_covsel(const Matrix& S, const UndirectedGraph& g, int n, double tol,
                        int max_iter) {
    const int d = static_cast<int>(S.rows());
    if (g.d != d) throw DimensionMismatch("ips_covsel: graph/matrix dimension mismatch");
    const Matrix W = S / double(n);  // saturated covariance target
    const auto cliques = maximal_cliques(g);

    Matrix K = Matrix::Zero(d, d);
    for (int i = 0; i < d; ++i) K(i, i) = 1.0 / W(i, i);

    CovselResult res;
    res.converged = false;
    Matrix sigma_prev = spd_inverse(K);
    int iter = 0;
    for (; iter < max_iter; ++iter) {
        for (const auto& C : cliques) {
            std::vector<int> B;
            for (int i = 0; i < d; ++i)
                if (std::find(C.begin(), C.end(), i) == C.end()) B.push_back(i);
            const Matrix Wcc_inv = invert_clique_moment(submatrix(W, C), "a clique");
            Matrix update = Wcc_inv;
            if (!B.empty()) {
                Matrix Kcb(C.size(), B.size());
                for (size_t a = 0; a < C.size(); ++a)
                    for (size_t b = 0; b < B.size(); ++b)
                        Kcb(static_cast<int>(a), static_cast<int>(b)) = K(C[a], B[b]);
                const Matrix Kbb = submatrix(K, B);
                update += Kcb * Kbb.llt().solve(Kcb.transpose());
            }
            for (size_t a = 0; a < C.size(); ++a)
                for (size_t b = 0; b < C.size(); ++b)
                    K(C[a], C[b]) = update(static_cast<int>(a), static_cast<int>(b));
        }
        const Matrix sigma = spd_inverse(K);
        const double change = (sigma - sigma_prev).cwiseAbs().maxCoeff();
        sigma_prev = sigma;
        if (change < tol) {
            res.converged = true;
            ++iter;
            break;
        }
    }
    res.iterations = iter;

    // Non-edge entries are zero at the fixed point; write them exactly so
    // downstream factorizations propagate them.
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            if (i != j && !g.edge(i, j)) K(i, j) = 0.0;
    K = 0.5 * (K + K.transpose()).eval();
    res.K_hat = K;
    res.Sigma_hat = spd_inverse(K);
    return res;
}

}  // namespace cvar
