#include "cvar/acf.hpp"

#include <cmath>
#include <string>

namespace cvar {

Dataset Dataset::reordered(const std::vector<int>& perm) const {
    if (static_cast<int>(perm.size()) != d())
        throw DimensionMismatch("reordered: permutation length must equal d");
    Dataset out;
    out.values.resize(n(), d());
    out.names.resize(static_cast<size_t>(d()));
    for (int i = 0; i < d(); ++i) {
        const int src = perm[static_cast<size_t>(i)];
        if (src < 0 || src >= d())
            throw DimensionMismatch("reordered: index out of range");
        out.values.col(i) = values.col(src);
        out.names[static_cast<size_t>(i)] =
            src < static_cast<int>(names.size()) ? names[static_cast<size_t>(src)]
                                                 : "v" + std::to_string(src + 1);
    }
    return out;
}

Dataset preprocess(const Dataset& data, bool standardize) {
    Dataset out = data;
    const int n = out.n();
    if (n < 2) throw InsufficientData("preprocess: need at least 2 observations");
    const Eigen::RowVectorXd mean = out.values.colwise().mean();
    out.values.rowwise() -= mean;
    if (standardize) {
        for (int j = 0; j < out.d(); ++j) {
            const double sd = std::sqrt(out.values.col(j).squaredNorm() / n);
            if (!(sd > 0.0))
                throw ZeroVariance("preprocess: column " + std::to_string(j + 1) +
                                   " has zero variance");
            out.values.col(j) /= sd;
        }
    }
    return out;
}

AutocovSet autocovariances(const Dataset& data, int p_max, bool standardize,
                           DivisorConvention divisor) {
    const int n = data.n();
    const int d = data.d();
    if (p_max < 0) throw DimensionMismatch("autocovariances: p_max must be >= 0");
    if (2 * p_max >= n)
        throw InsufficientData("autocovariances: p_max must be below n/2");
    const Dataset x = preprocess(data, standardize);

    AutocovSet acs;
    acs.d = d;
    acs.divisor = divisor;
    acs.lags.reserve(static_cast<size_t>(p_max) + 1);
    for (int h = 0; h <= p_max; ++h) {
        // C(h) = E X_t X_{t+h}^T
        Matrix C = x.values.topRows(n - h).transpose() * x.values.bottomRows(n - h);
        C /= (divisor == DivisorConvention::Fixed) ? double(n) : double(n - h);
        if (h == 0) C = 0.5 * (C + C.transpose()).eval();
        acs.lags.push_back(std::move(C));
    }
    return acs;
}

Matrix assemble_block_toeplitz(const AutocovSet& acs, int p) {
    if (p < 0 || p > acs.p_max())
        throw MissingLags("assemble_block_toeplitz: lags 0.." + std::to_string(p) +
                          " required");
    const int d = acs.d;
    Matrix T(d * (p + 1), d * (p + 1));
    for (int i = 0; i <= p; ++i)
        for (int j = 0; j <= p; ++j) {
            if (i >= j)
                T.block(i * d, j * d, d, d) = acs.lag(i - j);
            else
                T.block(i * d, j * d, d, d) = acs.lag(j - i).transpose();
        }
    return T;
}

Matrix stacked_autocov(const AutocovSet& acs, int p) {
    if (p > acs.p_max()) throw MissingLags("stacked_autocov: not enough lags");
    const int d = acs.d;
    Matrix S(p * d, d);
    for (int h = 1; h <= p; ++h) S.block((h - 1) * d, 0, d, d) = acs.lag(h);
    return S;
}

Matrix conditional_covariance(const AutocovSet& acs, int p) {
    if (p > acs.p_max()) throw MissingLags("conditional_covariance: not enough lags");
    if (p == 0) return acs.lag(0);
    const Matrix cp = assemble_block_toeplitz(acs, p - 1);
    const Matrix cp_inv = spd_inverse(cp);  // throws NotPositiveDefinite
    const Matrix C1p = stacked_autocov(acs, p);
    Matrix cond = acs.lag(0) - C1p.transpose() * cp_inv * C1p;
    return 0.5 * (cond + cond.transpose());
}

}  // namespace cvar
