#include "cvar/select.hpp"

#include <cmath>
#include <limits>
#include <nlohmann/json.hpp>
#include <sstream>

namespace cvar {

namespace {

int choose2(size_t m) { return static_cast<int>(m * (m - 1) / 2); }

}  // namespace

int parameter_count(const CvarModel& model) {
    int q = model.p * model.d * model.d;
    if (model.restricted) {
        for (const auto& C : model.restricted->jt.cliques) q += choose2(C.size());
        for (const auto& S : model.restricted->jt.separators) q += choose2(S.size());
    } else {
        q += choose2(size_t(model.d));
    }
    return q;
}

CriteriaRow information_criteria(const CvarModel& model, const Dataset& data,
                                 const FitOptions& opts) {
    const int d = model.d;
    const double m = double(data.n() - model.p);
    const int q = parameter_count(model);
    if (m * d <= double(q) + 1.0)
        throw DegenerateDenominator("information_criteria: (n-p)d <= q + 1");

    CriteriaRow row;
    row.p = model.p;
    row.n_params = q;
    row.restricted = model.restricted.has_value();

    const double logdet = model.Delta.array().log().sum();
    row.aic = logdet + 2.0 * q / m;
    row.bic = logdet + q * std::log(m) / m;
    row.hq = logdet + 2.0 * q * std::log(std::log(m)) / m;

    const auto res = residuals_and_loglik(model, data, opts.standardize);
    row.aicc = -2.0 * res.loglik + 2.0 * q * m * d / (m * d - q - 1.0);
    return row;
}

CriteriaTable order_selection(const Dataset& data, int p_max,
                              const std::optional<UndirectedGraph>& graph,
                              const FitOptions& opts) {
    CriteriaTable table;
    for (int p = 1; p <= p_max; ++p) {
        CriteriaRow row;
        try {
            const CvarModel model = graph ? fit_restricted(data, p, *graph, opts)
                                          : fit_unrestricted(data, p, opts);
            row = information_criteria(model, data, opts);
        } catch (const Error& e) {
            row.p = p;
            row.restricted = graph.has_value();
            row.failed = true;
            row.failure = e.name();
        }
        table.rows.push_back(std::move(row));
    }

    const auto argmin = [&](double CriteriaRow::*field) {
        int best = -1;
        double best_val = std::numeric_limits<double>::infinity();
        for (const auto& row : table.rows)
            if (!row.failed && row.*field < best_val) {
                best_val = row.*field;
                best = row.p;
            }
        return best;
    };
    table.best_aic = argmin(&CriteriaRow::aic);
    table.best_aicc = argmin(&CriteriaRow::aicc);
    table.best_bic = argmin(&CriteriaRow::bic);
    table.best_hq = argmin(&CriteriaRow::hq);
    return table;
}

std::string CriteriaTable::to_csv() const {
    std::ostringstream out;
    out.precision(6);
    out << "p,AIC,AICC,BIC,HQ\n";
    for (const auto& row : rows) {
        out << row.p << ",";
        if (row.failed)
            out << "NA,NA,NA,NA  # " << row.failure << "\n";
        else
            out << row.aic << "," << row.aicc << "," << row.bic << "," << row.hq << "\n";
    }
    return out.str();
}

std::string CriteriaTable::to_json() const {
    nlohmann::json j;
    j["rows"] = nlohmann::json::array();
    for (const auto& row : rows) {
        nlohmann::json r;
        r["p"] = row.p;
        r["restricted"] = row.restricted;
        if (row.failed) {
            r["failed"] = true;
            r["error"] = row.failure;
        } else {
            r["aic"] = row.aic;
            r["aicc"] = row.aicc;
            r["bic"] = row.bic;
            r["hq"] = row.hq;
            r["n_params"] = row.n_params;
        }
        j["rows"].push_back(std::move(r));
    }
    j["best"] = {{"aic", best_aic}, {"aicc", best_aicc}, {"bic", best_bic}, {"hq", best_hq}};
    return j.dump(2);
}

}  // namespace cvar
