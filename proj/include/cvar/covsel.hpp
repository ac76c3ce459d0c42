#ifndef CVAR_COVSEL_HPP
#define CVAR_COVSEL_HPP

#include "cvar/acf.hpp"
#include "cvar/graphs.hpp"

namespace cvar {

/// Concentration matrix re-estimated under zero constraints, together with
/// its inverse. Within-graph non-edge entries of K_hat are exact zeros.
struct CovselResult {
    Matrix K_hat;
    Matrix Sigma_hat;
    JunctionTree structure;
    int lag_extension = 0;
    int iterations = 0;  // IPS only
    bool converged = true;
};

/// Closed-form covariance selection on a decomposable structure:
///   K_hat = n * ( sum_C [S_C^{-1}]^V - sum_S [S_S^{-1}]^V )
/// where S is the d x d product-moment matrix (sum of outer products of the
/// centered sample) and [.]^V zero-pads clique/separator blocks.
/// Requires n greater than the maximum clique size.
CovselResult covsel_decomposable(const Matrix& S, const JunctionTree& jt, int n);

/// Lag-extended covariance selection for the restricted CVAR(p) pipeline:
/// every clique and separator of the contemporaneous JT is extended with all
/// p*d lagged variables before applying the embedding formula, scaled by the
/// effective sample size n - p. Clique moments are taken as submatrices of
/// the assembled block Toeplitz estimate so that the complete-graph case
/// reduces exactly to the unrestricted concentration matrix.
CovselResult covsel_lagged(const Dataset& data, const JunctionTree& jt, int p,
                           bool standardize = false);

/// Same, but on a precomputed AutocovSet (lags 0..p present).
CovselResult covsel_lagged(const AutocovSet& acs, const JunctionTree& jt, int p, int n);

/// Iterative proportional scaling for an arbitrary graph; S is the d x d
/// product-moment matrix, n the sample size. Stops when the largest absolute
/// change of Sigma_hat per sweep falls below tol. On hitting max_iter the
/// best iterate is returned flagged non-converged.
CovselResult ips_covsel(const Matrix& S, const UndirectedGraph& g, int n,
                        double tol = 1e-9, int max_iter = 10000);

}  // namespace cvar

#endif
