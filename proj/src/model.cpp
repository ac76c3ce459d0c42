#include "cvar/model.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <nlohmann/json.hpp>
#include <random>

#include "cvar/covsel.hpp"

namespace cvar {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

struct Extracted {
    Matrix A;
    std::vector<Matrix> B;
    Vector Delta;
};

Extracted extract_parameters(const BlockLdlFactors& f, int d, int p) {
    Extracted out;
    out.A = f.L.topLeftCorner(d, d).transpose();
    out.Delta.resize(d);
    for (int j = 0; j < d; ++j) out.Delta(j) = 1.0 / f.dinv_blocks[size_t(j)](0, 0);
    if (p > 0) {
        const Matrix Bfull = f.L.block(d, 0, p * d, d).transpose();  // d x pd
        for (int h = 0; h < p; ++h) out.B.push_back(Bfull.middleCols(h * d, d));
    }
    return out;
}

std::vector<int> identity_order(int d) {
    std::vector<int> order(static_cast<size_t>(d));
    for (int i = 0; i < d; ++i) order[size_t(i)] = i;
    return order;
}

}  // namespace

CvarModel fit_unrestricted(const Dataset& data, int p, const FitOptions& opts) {
    const int d = data.d();
    const AutocovSet acs = autocovariances(data, p, opts.standardize, opts.divisor);

    CvarModel model;
    model.d = d;
    model.p = p;
    model.ordering = data.names;

    if (p == 0) {
        const Matrix K = spd_inverse(acs.lag(0));
        const auto f = block_ldl(K, BlockPartition::singletons_then_tail(d, 0));
        auto e = extract_parameters(f, d, 0);
        model.A = std::move(e.A);
        model.Delta = std::move(e.Delta);
        return model;
    }

    const Matrix K = spd_inverse(assemble_block_toeplitz(acs, p));
    Matrix trailing = spd_inverse(assemble_block_toeplitz(acs, p - 1));
    const auto f = block_ldl(K, BlockPartition::singletons_then_tail(d, p * d),
                             std::move(trailing));
    auto e = extract_parameters(f, d, p);
    model.A = std::move(e.A);
    model.B = std::move(e.B);
    model.Delta = std::move(e.Delta);
    return model;
}

CvarModel fit_restricted(const Dataset& data, int p, const UndirectedGraph& graph,
                         const FitOptions& opts) {
    const int d = data.d();
    if (graph.d != d)
        throw DimensionMismatch("fit_restricted: graph has " + std::to_string(graph.d) +
                                " nodes, data has " + std::to_string(d) + " columns");
    JunctionTree jt;
    try {
        jt = junction_tree(graph, identity_order(d));
    } catch (const NotPerfectOrdering&) {
        throw NotDecomposable(
            "fit_restricted: the data ordering is not perfect for the graph; "
            "reorder via MCS or apply triangulate_fill_in first");
    }

    CvarModel model;
    model.d = d;
    model.p = p;
    model.ordering = data.names;
    model.restricted = Restriction{graph, jt};

    const AutocovSet acs = autocovariances(data, p, opts.standardize, opts.divisor);
    BlockLdlFactors f = [&] {
        if (p == 0) {
            const Matrix S = double(data.n()) * acs.lag(0);
            const CovselResult cr = covsel_decomposable(S, jt, data.n());
            return block_ldl(cr.K_hat, BlockPartition::singletons_then_tail(d, 0));
        }
        const CovselResult cr = covsel_lagged(acs, jt, p, data.n());
        return block_ldl(cr.K_hat, BlockPartition::singletons_then_tail(d, p * d));
    }();

    auto e = extract_parameters(f, d, p);
    model.A = std::move(e.A);
    model.B = std::move(e.B);
    model.Delta = std::move(e.Delta);

    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j)
            if (!graph.edge(i, j) && model.A(i, j) != 0.0)
                throw Error("InternalError",
                            "fit_restricted: zero constraint failed to propagate");
    return model;
}

ReducedModel to_reduced_form(const CvarModel& model) {
    ReducedModel red;
    const auto Ainv_apply = [&](const Matrix& X) {
        return model.A.triangularView<Eigen::Upper>().solve(X).eval();
    };
    for (const auto& Bh : model.B) red.M.push_back(Ainv_apply(Bh));
    const Matrix AinvD = Ainv_apply(model.Delta.asDiagonal().toDenseMatrix());
    Matrix Sigma = model.A.triangularView<Eigen::Upper>()
                       .solve(AinvD.transpose())
                       .transpose();
    red.Sigma = 0.5 * (Sigma + Sigma.transpose());
    return red;
}

ResidualsResult residuals_and_loglik(const CvarModel& model, const Dataset& data,
                                     bool standardize) {
    if (data.d() != model.d)
        throw DimensionMismatch("residuals_and_loglik: dimension mismatch");
    const int n = data.n();
    const int p = model.p;
    if (n <= p) throw InsufficientData("residuals_and_loglik: series shorter than order");
    const Dataset x = preprocess(data, standardize);

    ResidualsResult res;
    res.U.resize(n - p, model.d);
    for (int t = p; t < n; ++t) {
        Vector u = model.A * x.values.row(t).transpose();
        for (int h = 1; h <= p; ++h)
            u += model.B[size_t(h - 1)] * x.values.row(t - h).transpose();
        res.U.row(t - p) = u.transpose();
    }

    const double m = double(n - p);
    double quad = 0.0;
    for (int j = 0; j < model.d; ++j)
        quad += res.U.col(j).squaredNorm() / model.Delta(j);
    res.loglik = -0.5 * m * model.d * std::log(kTwoPi) -
                 0.5 * m * model.Delta.array().log().sum() - 0.5 * quad;
    return res;
}

double check_stability(const CvarModel& model) {
    if (model.p == 0 || model.B.empty()) return 0.0;
    const ReducedModel red = to_reduced_form(model);
    const int d = model.d;
    const int p = model.p;
    Matrix F = Matrix::Zero(p * d, p * d);
    for (int h = 0; h < p; ++h) F.block(0, h * d, d, d) = -red.M[size_t(h)];
    for (int h = 1; h < p; ++h) F.block(h * d, (h - 1) * d, d, d) = Matrix::Identity(d, d);
    Eigen::EigenSolver<Matrix> es(F, /*computeEigenvectors=*/false);
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

Dataset simulate(const CvarModel& model, int n, std::uint64_t seed, int burn_in) {
    const double radius = check_stability(model);
    if (radius >= 1.0)
        throw UnstableModel("simulate: spectral radius " + std::to_string(radius) +
                            " is not below 1");
    const ReducedModel red = to_reduced_form(model);
    const int d = model.d;
    const int p = model.p;

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Vector delta_sqrt = model.Delta.array().sqrt();

    std::vector<Vector> history(size_t(p), Vector::Zero(d));
    Dataset out;
    out.values.resize(n, d);
    out.names = model.ordering;
    if (out.names.empty())
        for (int j = 0; j < d; ++j) out.names.push_back("x" + std::to_string(j + 1));
    for (int t = 0; t < burn_in + n; ++t) {
        Vector u(d);
        for (int j = 0; j < d; ++j) u(j) = delta_sqrt(j) * gauss(rng);
        Vector x = model.A.triangularView<Eigen::Upper>().solve(u);
        for (int h = 0; h < p; ++h) x -= red.M[size_t(h)] * history[size_t(h)];
        for (int h = p - 1; h > 0; --h) history[size_t(h)] = history[size_t(h - 1)];
        if (p > 0) history[0] = x;
        if (t >= burn_in) out.values.row(t - burn_in) = x.transpose();
    }
    return out;
}

// --- JSON round trip -------------------------------------------------------

namespace {

nlohmann::json matrix_to_json(const Matrix& M) {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < M.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int j = 0; j < M.cols(); ++j) row.push_back(M(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const nlohmann::json& j) {
    const int r = static_cast<int>(j.size());
    const int c = r > 0 ? static_cast<int>(j.at(0).size()) : 0;
    Matrix M(r, c);
    for (int i = 0; i < r; ++i)
        for (int k = 0; k < c; ++k) M(i, k) = j.at(size_t(i)).at(size_t(k)).get<double>();
    return M;
}

}  // namespace

std::string CvarModel::to_json() const {
    nlohmann::json j;
    j["d"] = d;
    j["p"] = p;
    j["ordering"] = ordering;
    j["A"] = matrix_to_json(A);
    j["B"] = nlohmann::json::array();
    for (const auto& Bh : B) j["B"].push_back(matrix_to_json(Bh));
    j["Delta"] = std::vector<double>(Delta.data(), Delta.data() + Delta.size());
    if (restricted) {
        nlohmann::json r;
        nlohmann::json edges = nlohmann::json::array();
        for (int i = 0; i < restricted->graph.d; ++i)
            for (int k = i + 1; k < restricted->graph.d; ++k)
                if (restricted->graph.edge(i, k)) edges.push_back({i, k});
        r["edges"] = std::move(edges);
        r["cliques"] = restricted->jt.cliques;
        r["separators"] = restricted->jt.separators;
        r["residuals"] = restricted->jt.residuals;
        r["parent"] = restricted->jt.parent;
        j["restricted"] = std::move(r);
    }
    return j.dump(2);
}

CvarModel CvarModel::from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    CvarModel m;
    m.d = j.at("d").get<int>();
    m.p = j.at("p").get<int>();
    m.ordering = j.at("ordering").get<std::vector<std::string>>();
    m.A = matrix_from_json(j.at("A"));
    for (const auto& Bh : j.at("B")) m.B.push_back(matrix_from_json(Bh));
    const auto delta = j.at("Delta").get<std::vector<double>>();
    m.Delta = Eigen::Map<const Vector>(delta.data(), static_cast<int>(delta.size()));
    if (j.contains("restricted")) {
        const auto& r = j.at("restricted");
        Restriction rs;
        rs.graph = UndirectedGraph::empty(m.d);
        rs.graph.labels = m.ordering;
        for (const auto& e : r.at("edges"))
            rs.graph.add_edge(e.at(0).get<int>(), e.at(1).get<int>());
        rs.jt.cliques = r.at("cliques").get<std::vector<std::vector<int>>>();
        rs.jt.separators = r.at("separators").get<std::vector<std::vector<int>>>();
        rs.jt.residuals = r.at("residuals").get<std::vector<std::vector<int>>>();
        rs.jt.parent = r.at("parent").get<std::vector<int>>();
        m.restricted = std::move(rs);
    }
    return m;
}

}  // namespace cvar
