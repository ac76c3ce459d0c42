#ifndef CVAR_ACF_HPP
#define CVAR_ACF_HPP

#include <string>
#include <vector>

#include "cvar/blockmat.hpp"

namespace cvar {

/// A multivariate series in time order, one row per time point.
struct Dataset {
    Matrix values;  // n x d
    std::vector<std::string> names;

    int n() const noexcept { return static_cast<int>(values.rows()); }
    int d() const noexcept { return static_cast<int>(values.cols()); }

    /// Reorder columns so that column i of the result is column perm[i] of
    /// this dataset (perm holds 0-based source indices).
    Dataset reordered(const std::vector<int>& perm) const;
};

enum class DivisorConvention { Fixed, PerLag };

/// Autocovariance matrices C(0..p_max); only h >= 0 is stored, C(-h) = C(h)^T.
struct AutocovSet {
    int d = 0;
    std::vector<Matrix> lags;  // lags[h] = C(h), d x d
    DivisorConvention divisor = DivisorConvention::Fixed;

    int p_max() const noexcept { return static_cast<int>(lags.size()) - 1; }
    const Matrix& lag(int h) const { return lags[static_cast<size_t>(h)]; }
};

/// Column-center (and optionally scale to unit sample standard deviation),
/// then estimate C(h) = (1/n) sum_{t=1}^{n-h} x_t x_{t+h}^T for h = 0..p_max.
/// The Fixed divisor 1/n keeps the assembled block Toeplitz estimate positive
/// semidefinite; PerLag uses 1/(n-h) instead.
AutocovSet autocovariances(const Dataset& data, int p_max, bool standardize = false,
                           DivisorConvention divisor = DivisorConvention::Fixed);

/// The (p+1)d x (p+1)d covariance of the stacked vector
/// (X_t, X_{t-1}, ..., X_{t-p}): block (i,j) = C(i-j) for i >= j.
Matrix assemble_block_toeplitz(const AutocovSet& acs, int p);

/// Schur complement C(p|0..p-1) = C(0) - C^T(1..p) c_p^{-1} C(1..p); this is
/// the inverse of the upper-left d x d block of c_{p+1}^{-1}. For p = 0 it is
/// C(0) itself.
Matrix conditional_covariance(const AutocovSet& acs, int p);

/// Stacked (C(1); ...; C(p)), pd x d.
Matrix stacked_autocov(const AutocovSet& acs, int p);

/// Center columns; if standardize also scale to unit sample std (divisor n).
Dataset preprocess(const Dataset& data, bool standardize);

}  // namespace cvar

#endif
