#include <doctest.h>

#include <cmath>
#include <random>

#include "cvar/select.hpp"

using namespace cvar;

namespace {

CvarModel stable_var1(int d) {
    CvarModel m;
    m.d = d;
    m.p = 1;
    m.A = Matrix::Identity(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) m.A(i, j) = 0.3 / double(j - i + 1);
    m.B = {Matrix::Zero(d, d)};
    for (int j = 0; j < d; ++j) m.B[0](j, j) = -0.5;
    m.Delta = Vector::Ones(d);
    for (int j = 0; j < d; ++j) m.ordering.push_back("x" + std::to_string(j + 1));
    return m;
}

}  // namespace

TEST_CASE("one-dimensional AIC by hand") {
    // d=1, p=1, delta=1, n=101: AIC = 0 + 2*(1+0)/100
    CvarModel m;
    m.d = 1;
    m.p = 1;
    m.A = Matrix::Identity(1, 1);
    m.B = {Matrix::Zero(1, 1)};
    m.Delta = Vector::Ones(1);
    m.ordering = {"x"};
    Dataset data;
    data.values.resize(101, 1);
    std::mt19937_64 rng(4);
    std::normal_distribution<double> gauss;
    for (int t = 0; t < 101; ++t) data.values(t, 0) = gauss(rng);
    data.names = {"x"};

    const CriteriaRow row = information_criteria(m, data);
    CHECK(row.n_params == 1);
    CHECK(row.aic == doctest::Approx(0.02).epsilon(1e-14));
    CHECK(row.bic == doctest::Approx(std::log(100.0) / 100.0).epsilon(1e-14));
    CHECK(row.hq ==
          doctest::Approx(2.0 * std::log(std::log(100.0)) / 100.0).epsilon(1e-14));
}

TEST_CASE("parameter counts") {
    CvarModel u = stable_var1(4);
    CHECK(parameter_count(u) == 1 * 16 + 6);

    // restricted count follows the clique/separator cardinalities
    CvarModel r = u;
    Restriction rs;
    rs.graph = UndirectedGraph::complete(4);
    rs.jt.cliques = {{1, 2, 3}, {0, 1}};
    rs.jt.separators = {{1}};
    rs.jt.residuals = {{1, 2, 3}, {0}};
    rs.jt.parent = {0};
    r.restricted = rs;
    CHECK(parameter_count(r) == 16 + 3 + 1 + 0);
}

TEST_CASE("each criterion increases strictly with the parameter count") {
    // synthetic rows with a fixed information term
    const int d = 3, n = 500;
    Dataset data;
    data.values = simulate(stable_var1(d), n, 8).values;
    for (int j = 0; j < d; ++j) data.names.push_back("x" + std::to_string(j + 1));
    const CvarModel m1 = fit_unrestricted(data, 1);

    // same fitted Delta, artificially larger q through a deeper order with
    // zero extra coefficient matrices
    CvarModel m2 = m1;
    m2.p = 2;
    m2.B.push_back(Matrix::Zero(d, d));
    const CriteriaRow r1 = information_criteria(m1, data);
    const CriteriaRow r2 = information_criteria(m2, data);
    CHECK(r2.n_params > r1.n_params);
    CHECK(r2.aic > r1.aic);
    CHECK(r2.bic > r1.bic);
    CHECK(r2.hq > r1.hq);
    CHECK(r2.aicc > r1.aicc);
}

TEST_CASE("degenerate denominator is rejected") {
    CvarModel m = stable_var1(2);
    Dataset data;
    data.values = simulate(m, 12, 3).values;
    data.names = {"x1", "x2"};
    // (n-p)d = 22 <= q+1 requires huge q; shrink the sample instead
    Dataset tiny;
    tiny.values = data.values.topRows(3);
    tiny.names = data.names;
    CHECK_THROWS_AS(information_criteria(m, tiny), DegenerateDenominator);
}

TEST_CASE("order selection recovers the true order and serializes") {
    const CvarModel truth = stable_var1(3);
    const Dataset data = simulate(truth, 2000, 77);
    const CriteriaTable table = order_selection(data, 5);
    REQUIRE(table.rows.size() == 5);
    CHECK(table.best_bic == 1);
    CHECK(table.best_hq == 1);

    const std::string csv = table.to_csv();
    CHECK(csv.rfind("p,AIC,AICC,BIC,HQ", 0) == 0);
    CHECK(csv.find("\n1,") != std::string::npos);
    const std::string json = table.to_json();
    CHECK(json.find("\"best\"") != std::string::npos);
}

TEST_CASE("argmin is invariant to a constant shift of the information term") {
    const Dataset data = simulate(stable_var1(3), 1500, 12);
    CriteriaTable table = order_selection(data, 4);
    CriteriaTable shifted = table;
    for (auto& row : shifted.rows) {
        row.aic += 5.0;
        row.bic += 5.0;
        row.hq += 5.0;
        row.aicc += 5.0;
    }
    const auto argmin = [&](const CriteriaTable& t, double CriteriaRow::*f) {
        int best = -1;
        double v = 1e300;
        for (const auto& r : t.rows)
            if (!r.failed && r.*f < v) {
                v = r.*f;
                best = r.p;
            }
        return best;
    };
    CHECK(argmin(table, &CriteriaRow::aic) == argmin(shifted, &CriteriaRow::aic));
    CHECK(argmin(table, &CriteriaRow::bic) == argmin(shifted, &CriteriaRow::bic));
}

TEST_CASE("failed fits are marked and excluded from the argmin") {
    const Dataset data = simulate(stable_var1(2), 14, 9);
    const CriteriaTable table = order_selection(data, 6);
    bool any_failed = false, any_ok = false;
    for (const auto& row : table.rows) {
        if (row.failed) {
            any_failed = true;
            CHECK_FALSE(row.failure.empty());
            CHECK(row.p != table.best_bic);
        } else {
            any_ok = true;
        }
    }
    CHECK(any_failed);
    CHECK(any_ok);
    CHECK(table.to_csv().find("NA") != std::string::npos);
}

TEST_CASE("restricted sweep carries the restricted parameter count") {
    const Dataset data = simulate(stable_var1(3), 1000, 31);
    const CriteriaTable table =
        order_selection(data, 2, UndirectedGraph::complete(3));
    for (const auto& row : table.rows) {
        REQUIRE_FALSE(row.failed);
        CHECK(row.restricted);
        CHECK(row.n_params == row.p * 9 + 3);  // one clique of size 3
    }
}
