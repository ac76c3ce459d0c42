#ifndef CVAR_MODEL_HPP
#define CVAR_MODEL_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cvar/acf.hpp"
#include "cvar/graphs.hpp"

namespace cvar {

/// Restriction metadata carried by a restricted fit.
struct Restriction {
    UndirectedGraph graph;
    JunctionTree jt;
};

/// Structural model A X_t + B_1 X_{t-1} + ... + B_p X_{t-p} = U_t with unit
/// upper triangular A, diagonal shock covariance Delta, under a fixed causal
/// ordering of the components.
struct CvarModel {
    int d = 0;
    int p = 0;
    std::vector<std::string> ordering;  // variable names in causal order
    Matrix A;                           // d x d, unit upper triangular
    std::vector<Matrix> B;              // B_1..B_p, each d x d
    Vector Delta;                       // positive diagonal entries
    std::optional<Restriction> restricted;

    std::string to_json() const;
    static CvarModel from_json(const std::string& text);
};

/// Reduced form X_t + M_1 X_{t-1} + ... + M_p X_{t-p} = V_t, cov(V_t) = Sigma.
struct ReducedModel {
    std::vector<Matrix> M;
    Matrix Sigma;
};

struct FitOptions {
    bool standardize = false;
    DivisorConvention divisor = DivisorConvention::Fixed;
};

/// Theorem-style fit: assemble the (p+1)d block Toeplitz covariance, invert,
/// block-LDL with partition (1,...,1, pd), and read A, B_1..B_p, Delta off
/// the factors. Data columns must already follow the causal ordering.
/// p = 0 fits the pure recursive model from the all-singleton LDL of C(0)^{-1}.
CvarModel fit_unrestricted(const Dataset& data, int p, const FitOptions& opts = {});

/// Restricted fit: the identity labelling of `graph` must be perfect (the
/// caller reorders data/graph first, or applies triangulate_fill_in); the
/// concentration matrix is re-estimated by lag-extended covariance selection
/// before the block LDL, so a_ij is exactly zero at contemporaneous non-edges.
CvarModel fit_restricted(const Dataset& data, int p, const UndirectedGraph& graph,
                         const FitOptions& opts = {});

/// M_j = A^{-1} B_j, Sigma = A^{-1} Delta A^{-T}.
ReducedModel to_reduced_form(const CvarModel& model);

struct ResidualsResult {
    Matrix U;        // (n - p) x d structural shocks
    double loglik;   // Gaussian log-likelihood at the fitted parameters
};

/// U_t = A(X_t - Xhat_t) with Xhat_t the one-step prediction; the data is
/// centered (and scaled, when the model was fitted on standardized data, the
/// caller passes data preprocessed the same way).
ResidualsResult residuals_and_loglik(const CvarModel& model, const Dataset& data,
                                     bool standardize = false);

/// Draw a trajectory of length n after discarding burn_in steps, Gaussian
/// shocks with variances Delta, deterministic under a fixed seed.
/// Throws UnstableModel when the spectral radius is >= 1.
Dataset simulate(const CvarModel& model, int n, std::uint64_t seed, int burn_in = 1000);

/// Largest eigenvalue modulus of the pd x pd companion matrix of the reduced
/// form; the model is stable iff the result is below 1.
double check_stability(const CvarModel& model);

}  // namespace cvar

#endif
