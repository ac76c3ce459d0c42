#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <optional>
#include <sstream>

#include "cvar/covsel.hpp"
#include "cvar/dataset_io.hpp"
#include "cvar/model.hpp"
#include "cvar/select.hpp"

namespace fs = std::filesystem;
using namespace cvar;

namespace {

int exit_code_for(const std::string& name) {
    static const std::vector<std::string> names = {
        "NotPositiveDefinite", "DimensionMismatch",  "InsufficientData",
        "ZeroVariance",        "MissingLags",        "DegenerateInput",
        "NotTriangulated",     "NotPerfectOrdering", "NotDecomposable",
        "CliqueTooLarge",      "SingularCliqueMoment", "MaxIterationsExceeded",
        "UnstableModel",       "DegenerateDenominator", "ParseError",
        "RaggedRows",          "NonNumericCell"};
    for (size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return static_cast<int>(i) + 2;
    return 1;
}

fs::path output_dir(const std::string& flag_value) {
    if (!flag_value.empty()) return flag_value;
    if (const char* env = std::getenv("CVAR_OUTPUT_DIR")) return env;
    return ".";
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open " + path.string() + " for writing");
    out << text;
}

UndirectedGraph load_edge_list(const std::string& path, int d) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open graph file " + path);
    UndirectedGraph g = UndirectedGraph::empty(d);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ss(line);
        int i, j;
        if (!(ss >> i)) continue;  // blank or comment-ish line
        if (!(ss >> j) || i < 0 || j < 0 || i >= d || j >= d || i == j)
            throw ParseError("graph file " + path + ", line " + std::to_string(line_no) +
                             ": expected two distinct 0-based node indices below " +
                             std::to_string(d));
        g.add_edge(i, j);
    }
    return g;
}

std::string edge_list_text(const UndirectedGraph& g) {
    std::ostringstream out;
    for (int i = 0; i < g.d; ++i)
        for (int j = i + 1; j < g.d; ++j)
            if (g.edge(i, j)) out << i << " " << j << "\n";
    return out.str();
}

std::string jt_json_text(const JunctionTree& jt,
                         const std::vector<std::pair<int, int>>& fill_in) {
    nlohmann::json j;
    j["cliques"] = jt.cliques;
    j["separators"] = jt.separators;
    j["residuals"] = jt.residuals;
    j["parent"] = jt.parent;
    if (!fill_in.empty()) {
        nlohmann::json f = nlohmann::json::array();
        for (const auto& e : fill_in) f.push_back({e.first, e.second});
        j["fill_in_edges"] = std::move(f);
    }
    return j.dump(2);
}

std::vector<std::string> load_name_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open ordering file " + path);
    std::vector<std::string> names;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) names.push_back(line);
    }
    return names;
}

Dataset apply_ordering(const Dataset& data, const std::vector<std::string>& names) {
    if (names.size() != data.names.size())
        throw ParseError("ordering file lists " + std::to_string(names.size()) +
                         " names, dataset has " + std::to_string(data.names.size()));
    std::vector<int> perm;
    for (const auto& want : names) {
        auto it = std::find(data.names.begin(), data.names.end(), want);
        if (it == data.names.end())
            throw ParseError("ordering file names unknown column '" + want + "'");
        perm.push_back(static_cast<int>(it - data.names.begin()));
    }
    return data.reordered(perm);
}

Matrix contemporaneous_concentration(const Dataset& data, int p, bool standardize) {
    const AutocovSet acs = autocovariances(data, p, standardize);
    if (p == 0) return spd_inverse(acs.lag(0));
    const Matrix K = spd_inverse(assemble_block_toeplitz(acs, p));
    return K.topLeftCorner(data.d(), data.d());
}

/// Shared dataset / graph-selection flags for fit, order and covsel.
struct CommonOpts {
    std::string input;
    std::string delimiter = ",";
    bool no_header = false;
    std::vector<std::string> columns;
    bool standardize = false;
    std::string ordering_file;
    bool mcs = false;
    std::string graph_file;
    double threshold = -1.0;
    double alpha = -1.0;
    std::string out_dir;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_graph) {
    cmd->add_option("-i,--input", o.input, "input CSV path")->required();
    cmd->add_option("--delimiter", o.delimiter, "field delimiter (default ,)");
    cmd->add_flag("--no-header", o.no_header, "first line is data, not names");
    cmd->add_option("--columns", o.columns, "column subset, by header name");
    cmd->add_flag("--standardize", o.standardize, "scale columns to unit variance");
    cmd->add_option("--ordering", o.ordering_file,
                    "file with one variable name per line, causal order");
    cmd->add_flag("--mcs", o.mcs, "derive the causal ordering by MCS");
    cmd->add_option("-o,--output", o.out_dir,
                    "output directory (default $CVAR_OUTPUT_DIR or .)");
    if (with_graph) {
        auto* gf = cmd->add_option("--graph", o.graph_file,
                                   "edge list file (0-based 'i j' per line)");
        auto* th = cmd->add_option("--threshold", o.threshold,
                                   "edge iff |partial correlation| >= threshold");
        auto* al = cmd->add_option("--alpha", o.alpha,
                                   "edge iff the partial-correlation t-test rejects");
        th->excludes(al);
        gf->excludes(th);
        gf->excludes(al);
    }
}

Dataset load_common(const CommonOpts& o) {
    LoadOptions lo;
    lo.delimiter = o.delimiter.empty() ? ',' : o.delimiter[0];
    lo.header = !o.no_header;
    lo.columns = o.columns;
    Dataset data = load_dataset(o.input, lo);
    if (!o.ordering_file.empty())
        data = apply_ordering(data, load_name_list(o.ordering_file));
    return data;
}

/// Resolve the contemporaneous restriction graph, possibly reordering the
/// data so that its identity labelling becomes perfect (--mcs).
struct GraphChoice {
    UndirectedGraph graph;
    std::vector<std::pair<int, int>> fill_in;
};

GraphChoice resolve_graph(const CommonOpts& o, Dataset& data, int p) {
    const int d = data.d();
    UndirectedGraph g = UndirectedGraph::empty(d);
    if (!o.graph_file.empty()) {
        g = load_edge_list(o.graph_file, d);
    } else {
        const Matrix K = contemporaneous_concentration(data, p, o.standardize);
        const Matrix pc = partial_correlations(K);
        if (o.threshold >= 0.0)
            g = graph_from_threshold(pc, o.threshold);
        else if (o.alpha >= 0.0)
            g = graph_from_test(pc, data.n(), d, o.alpha);
        else
            throw ParseError("restricted mode needs --graph, --threshold or --alpha");
    }
    g.labels = data.names;

    GraphChoice choice;
    auto mcs = mcs_perfect_order(g);
    if (!mcs.perfect) {
        const auto filled = triangulate_fill_in(g);
        choice.fill_in = filled.added_edges;
        g = filled.graph;
        g.labels = data.names;
        mcs = mcs_perfect_order(g);
    }
    if (o.mcs) {
        data = data.reordered(mcs.order);
        UndirectedGraph h = UndirectedGraph::empty(d);
        for (int a = 0; a < d; ++a)
            for (int b = a + 1; b < d; ++b)
                if (g.edge(mcs.order[size_t(a)], mcs.order[size_t(b)])) h.add_edge(a, b);
        h.labels = data.names;
        g = std::move(h);
    }
    choice.graph = std::move(g);
    return choice;
}

void write_model_artifacts(const fs::path& dir, const CvarModel& model) {
    write_text(dir / "model.json", model.to_json());
    save_matrix_csv((dir / "A.csv").string(), model.A);
    for (size_t h = 0; h < model.B.size(); ++h)
        save_matrix_csv((dir / ("B" + std::to_string(h + 1) + ".csv")).string(),
                        model.B[h]);
    save_matrix_csv((dir / "Delta.csv").string(), model.Delta);
}

int run(int argc, char** argv) {
    CLI::App app{"causal VAR fitting via block LDL of block Toeplitz concentrations"};
    app.require_subcommand(1);

    CommonOpts fit_o, order_o, graph_o, covsel_o;
    int fit_p = 1, order_pmax = 5, graph_p = 1, covsel_p = 1;
    bool fit_restricted_flag = false, order_restricted_flag = false;

    auto* fit_cmd = app.add_subcommand("fit", "fit a model at a fixed order");
    add_common(fit_cmd, fit_o, true);
    fit_cmd->add_option("-p,--order", fit_p, "autoregressive order")->check(CLI::NonNegativeNumber);
    fit_cmd->add_flag("--restricted", fit_restricted_flag,
                      "restrict the contemporaneous DAG to a graph");

    auto* order_cmd = app.add_subcommand("order", "sweep orders 1..p_max");
    add_common(order_cmd, order_o, true);
    order_cmd->add_option("-p,--max-order", order_pmax, "largest order to try")
        ->check(CLI::PositiveNumber);
    order_cmd->add_flag("--restricted", order_restricted_flag,
                        "evaluate the restricted model instead");

    auto* graph_cmd =
        app.add_subcommand("graph", "partial correlations, edges, MCS, junction tree");
    add_common(graph_cmd, graph_o, true);
    graph_cmd->add_option("-p,--order", graph_p, "order of the concentration matrix")
        ->check(CLI::NonNegativeNumber);

    auto* covsel_cmd = app.add_subcommand("covsel", "covariance selection on a graph");
    add_common(covsel_cmd, covsel_o, true);
    covsel_cmd->add_option("-p,--order", covsel_p, "lag extension order")
        ->check(CLI::NonNegativeNumber);

    std::string sim_model, sim_out_dir;
    int sim_n = 1000, sim_burn = 1000;
    std::uint64_t sim_seed = 1;
    auto* sim_cmd = app.add_subcommand("simulate", "draw a trajectory from a model");
    sim_cmd->add_option("-m,--model", sim_model, "model JSON path")->required();
    sim_cmd->add_option("-n,--length", sim_n, "trajectory length")->check(CLI::PositiveNumber);
    sim_cmd->add_option("--seed", sim_seed, "RNG seed");
    sim_cmd->add_option("--burn-in", sim_burn, "discarded warm-up steps")
        ->check(CLI::NonNegativeNumber);
    sim_cmd->add_option("-o,--output", sim_out_dir, "output directory");

    CLI11_PARSE(app, argc, argv);

    FitOptions fo;

    if (fit_cmd->parsed()) {
        fo.standardize = fit_o.standardize;
        Dataset data = load_common(fit_o);
        const fs::path dir = output_dir(fit_o.out_dir);
        fs::create_directories(dir);
        CvarModel model;
        if (fit_restricted_flag) {
            const GraphChoice gc = resolve_graph(fit_o, data, fit_p);
            model = fit_restricted(data, fit_p, gc.graph, fo);
        } else {
            model = fit_unrestricted(data, fit_p, fo);
        }
        write_model_artifacts(dir, model);
        std::cout << "fit: wrote model.json (p=" << fit_p
                  << ", spectral radius=" << check_stability(model) << ")\n";
        return 0;
    }

    if (order_cmd->parsed()) {
        fo.standardize = order_o.standardize;
        Dataset data = load_common(order_o);
        const fs::path dir = output_dir(order_o.out_dir);
        fs::create_directories(dir);
        std::optional<UndirectedGraph> graph;
        if (order_restricted_flag)
            graph = resolve_graph(order_o, data, 1).graph;
        const CriteriaTable table = order_selection(data, order_pmax, graph, fo);
        write_text(dir / "criteria.csv", table.to_csv());
        write_text(dir / "criteria.json", table.to_json());
        std::cout << "order: best AIC=" << table.best_aic << " AICC=" << table.best_aicc
                  << " BIC=" << table.best_bic << " HQ=" << table.best_hq << "\n";
        return 0;
    }

    if (graph_cmd->parsed()) {
        Dataset data = load_common(graph_o);
        const fs::path dir = output_dir(graph_o.out_dir);
        fs::create_directories(dir);
        const Matrix K = contemporaneous_concentration(data, graph_p, graph_o.standardize);
        const Matrix pc = partial_correlations(K);
        save_matrix_csv((dir / "pcorr.csv").string(), pc);

        UndirectedGraph g;
        if (!graph_o.graph_file.empty())
            g = load_edge_list(graph_o.graph_file, data.d());
        else if (graph_o.alpha >= 0.0)
            g = graph_from_test(pc, data.n(), data.d(), graph_o.alpha);
        else
            g = graph_from_threshold(pc, graph_o.threshold >= 0.0 ? graph_o.threshold : 0.04);
        g.labels = data.names;
        write_text(dir / "edges.txt", edge_list_text(g));

        auto mcs = mcs_perfect_order(g);
        std::vector<std::pair<int, int>> fill_in;
        if (!mcs.perfect) {
            const auto filled = triangulate_fill_in(g);
            fill_in = filled.added_edges;
            g = filled.graph;
            g.labels = data.names;
            mcs = mcs_perfect_order(g);
        }
        std::ostringstream order_text;
        for (int node : mcs.order) order_text << data.names[size_t(node)] << "\n";
        write_text(dir / "mcs.txt", order_text.str());
        write_text(dir / "jt.json", jt_json_text(junction_tree(g, mcs.order), fill_in));
        std::cout << "graph: " << g.edge_count() << " edges, "
                  << (fill_in.empty() ? "triangulated" : "triangulated after fill-in")
                  << "\n";
        return 0;
    }

    if (covsel_cmd->parsed()) {
        Dataset data = load_common(covsel_o);
        const fs::path dir = output_dir(covsel_o.out_dir);
        fs::create_directories(dir);
        const GraphChoice gc = resolve_graph(covsel_o, data, covsel_p);
        const auto mcs = mcs_perfect_order(gc.graph);
        const JunctionTree jt = junction_tree(gc.graph, mcs.order);
        CovselResult cr;
        if (covsel_p == 0) {
            const AutocovSet acs = autocovariances(data, 0, covsel_o.standardize);
            cr = covsel_decomposable(double(data.n()) * acs.lag(0), jt, data.n());
        } else {
            cr = covsel_lagged(data, jt, covsel_p, covsel_o.standardize);
        }
        save_matrix_csv((dir / "Khat.csv").string(), cr.K_hat);
        save_matrix_csv((dir / "Sigma_hat.csv").string(), cr.Sigma_hat);
        write_text(dir / "jt.json", jt_json_text(jt, gc.fill_in));
        std::cout << "covsel: wrote Khat.csv (" << cr.K_hat.rows() << "x"
                  << cr.K_hat.cols() << ")\n";
        return 0;
    }

    // simulate
    std::ifstream in(sim_model);
    if (!in) throw ParseError("cannot open model file " + sim_model);
    std::stringstream buf;
    buf << in.rdbuf();
    const CvarModel model = CvarModel::from_json(buf.str());
    const Dataset traj = simulate(model, sim_n, sim_seed, sim_burn);
    const fs::path dir = output_dir(sim_out_dir);
    fs::create_directories(dir);
    save_dataset_csv((dir / "sim.csv").string(), traj);
    std::cout << "simulate: wrote sim.csv (" << traj.n() << "x" << traj.d() << ")\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const Error& e) {
        std::cerr << e.name() << ": " << e.what() << "\n";
        return exit_code_for(e.name());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
