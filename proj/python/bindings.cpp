#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cvar/covsel.hpp"
#include "cvar/model.hpp"
#include "cvar/select.hpp"

namespace py = pybind11;
using namespace cvar;

namespace {

Dataset make_dataset(const Matrix& values, std::vector<std::string> names) {
    Dataset d;
    d.values = values;
    if (names.empty())
        for (int j = 0; j < values.cols(); ++j) names.push_back("x" + std::to_string(j + 1));
    if (static_cast<int>(names.size()) != values.cols())
        throw DimensionMismatch("names length must match the number of columns");
    d.names = std::move(names);
    return d;
}

UndirectedGraph graph_from_matrix(const Matrix& adjacency) {
    return UndirectedGraph::from_adjacency(adjacency);
}

py::dict model_to_dict(const CvarModel& m) {
    py::dict out;
    out["d"] = m.d;
    out["p"] = m.p;
    out["ordering"] = m.ordering;
    out["A"] = m.A;
    py::list bs;
    for (const auto& Bh : m.B) bs.append(Bh);
    out["B"] = bs;
    out["Delta"] = m.Delta;
    out["spectral_radius"] = check_stability(m);
    return out;
}

}  // namespace

PYBIND11_MODULE(_cvarpy, mod) {
    mod.doc() = "causal VAR fitting via block LDL of block Toeplitz concentrations";

    mod.def(
        "fit",
        [](const Matrix& values, int p, std::vector<std::string> names, bool standardize) {
            FitOptions opts;
            opts.standardize = standardize;
            return model_to_dict(fit_unrestricted(make_dataset(values, std::move(names)), p, opts));
        },
        py::arg("values"), py::arg("p"), py::arg("names") = std::vector<std::string>{},
        py::arg("standardize") = false,
        "Unrestricted CVAR(p) fit; columns must follow the causal ordering.");

    mod.def(
        "fit_restricted",
        [](const Matrix& values, int p, const Matrix& adjacency,
           std::vector<std::string> names, bool standardize) {
            FitOptions opts;
            opts.standardize = standardize;
            return model_to_dict(fit_restricted(make_dataset(values, std::move(names)), p,
                                                graph_from_matrix(adjacency), opts));
        },
        py::arg("values"), py::arg("p"), py::arg("adjacency"),
        py::arg("names") = std::vector<std::string>{}, py::arg("standardize") = false,
        "Restricted fit; adjacency is the 0/1 contemporaneous graph.");

    mod.def(
        "order_selection",
        [](const Matrix& values, int p_max, bool standardize) {
            const CriteriaTable t =
                order_selection(make_dataset(values, {}), p_max, std::nullopt,
                                FitOptions{standardize, DivisorConvention::Fixed});
            py::list rows;
            for (const auto& r : t.rows) {
                py::dict row;
                row["p"] = r.p;
                row["failed"] = r.failed;
                if (!r.failed) {
                    row["aic"] = r.aic;
                    row["aicc"] = r.aicc;
                    row["bic"] = r.bic;
                    row["hq"] = r.hq;
                }
                rows.append(row);
            }
            py::dict out;
            out["rows"] = rows;
            out["best"] = py::dict(py::arg("aic") = t.best_aic, py::arg("aicc") = t.best_aicc,
                                   py::arg("bic") = t.best_bic, py::arg("hq") = t.best_hq);
            return out;
        },
        py::arg("values"), py::arg("p_max"), py::arg("standardize") = false);

    mod.def(
        "partial_correlations",
        [](const Matrix& values, int p, bool standardize) {
            const Dataset data = make_dataset(values, {});
            const AutocovSet acs = autocovariances(data, p, standardize);
            Matrix K = p == 0 ? spd_inverse(acs.lag(0))
                              : Matrix(spd_inverse(assemble_block_toeplitz(acs, p))
                                           .topLeftCorner(data.d(), data.d()));
            return partial_correlations(K);
        },
        py::arg("values"), py::arg("p") = 1, py::arg("standardize") = false,
        "Contemporaneous partial correlations given p lags.");

    mod.def(
        "simulate",
        [](const Matrix& A, const std::vector<Matrix>& B, const Vector& Delta, int n,
           std::uint64_t seed, int burn_in) {
            CvarModel m;
            m.d = static_cast<int>(A.rows());
            m.p = static_cast<int>(B.size());
            m.A = A;
            m.B = B;
            m.Delta = Delta;
            return simulate(m, n, seed, burn_in).values;
        },
        py::arg("A"), py::arg("B"), py::arg("Delta"), py::arg("n"), py::arg("seed") = 1,
        py::arg("burn_in") = 1000);

    mod.def(
        "covsel",
        [](const Matrix& S, const Matrix& adjacency, int n) {
            const UndirectedGraph g = graph_from_matrix(adjacency);
            const auto mcs = mcs_perfect_order(g);
            if (!mcs.perfect)
                throw NotDecomposable("covsel: graph is not decomposable");
            const auto cr = covsel_decomposable(S, junction_tree(g, mcs.order), n);
            return py::make_tuple(cr.K_hat, cr.Sigma_hat);
        },
        py::arg("S"), py::arg("adjacency"), py::arg("n"),
        "Closed-form covariance selection; S is the product-moment matrix.");

    py::register_exception<Error>(mod, "CvarError");
}
