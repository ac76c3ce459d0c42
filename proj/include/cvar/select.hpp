#ifndef CVAR_SELECT_HPP
#define CVAR_SELECT_HPP

#include <optional>
#include <string>
#include <vector>

#include "cvar/model.hpp"

namespace cvar {

/// Information criteria for one candidate order.
struct CriteriaRow {
    int p = 0;
    double aic = 0.0;
    double aicc = 0.0;
    double bic = 0.0;
    double hq = 0.0;
    int n_params = 0;
    bool restricted = false;
    bool failed = false;
    std::string failure;  // error name when failed
};

/// Sweep result with per-criterion argmin orders (ties to the smaller p).
struct CriteriaTable {
    std::vector<CriteriaRow> rows;
    int best_aic = -1;
    int best_aicc = -1;
    int best_bic = -1;
    int best_hq = -1;

    std::string to_csv() const;
    std::string to_json() const;
};

/// Number of free parameters: p*d^2 + C(d,2) unrestricted, or
/// p*d^2 + sum_j C(|C_j|,2) + sum_{j>=2} C(|S_j|,2) restricted.
int parameter_count(const CvarModel& model);

/// AIC  = sum ln delta_j + 2q/(n-p)
/// BIC  = sum ln delta_j + q ln(n-p)/(n-p)
/// HQ   = sum ln delta_j + 2q ln(ln(n-p))/(n-p)
/// AICC = -2 loglik + 2q(n-p)d / ((n-p)d - q - 1)
/// Throws DegenerateDenominator when (n-p)d <= q + 1.
CriteriaRow information_criteria(const CvarModel& model, const Dataset& data,
                                 const FitOptions& opts = {});

/// Fit p = 1..p_max (restricted when a graph is given), evaluate all four
/// criteria, and record argmins. A fit failure marks the row failed and
/// excludes it from the argmins instead of aborting the sweep.
CriteriaTable order_selection(const Dataset& data, int p_max,
                              const std::optional<UndirectedGraph>& graph = std::nullopt,
                              const FitOptions& opts = {});

}  // namespace cvar

#endif
