#include "cvar/graphs.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>

namespace cvar {

namespace {

std::vector<int> sorted(std::vector<int> v) {
    std::sort(v.begin(), v.end());
    return v;
}

bool is_subset(const std::vector<int>& a, const std::vector<int>& b) {
    // both sorted
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

UndirectedGraph UndirectedGraph::empty(int d) {
    UndirectedGraph g;
    g.d = d;
    g.adjacency.assign(size_t(d), std::vector<bool>(size_t(d), false));
    for (int i = 0; i < d; ++i) g.labels.push_back("v" + std::to_string(i + 1));
    return g;
}

UndirectedGraph UndirectedGraph::complete(int d) {
    UndirectedGraph g = empty(d);
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) g.add_edge(i, j);
    return g;
}

UndirectedGraph UndirectedGraph::from_adjacency(const Matrix& M) {
    if (M.rows() != M.cols())
        throw DimensionMismatch("from_adjacency: matrix must be square");
    UndirectedGraph g = empty(static_cast<int>(M.rows()));
    for (int i = 0; i < g.d; ++i)
        for (int j = i + 1; j < g.d; ++j)
            if (M(i, j) != 0.0 || M(j, i) != 0.0) g.add_edge(i, j);
    return g;
}

void UndirectedGraph::add_edge(int i, int j) {
    if (i == j) return;
    adjacency[size_t(i)][size_t(j)] = adjacency[size_t(j)][size_t(i)] = true;
}

int UndirectedGraph::edge_count() const {
    int c = 0;
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j)
            if (edge(i, j)) ++c;
    return c;
}

bool UndirectedGraph::connected() const {
    if (d == 0) return true;
    std::vector<bool> seen(size_t(d), false);
    std::vector<int> stack{0};
    seen[0] = true;
    int count = 1;
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        for (int u = 0; u < d; ++u)
            if (edge(v, u) && !seen[size_t(u)]) {
                seen[size_t(u)] = true;
                ++count;
                stack.push_back(u);
            }
    }
    return count == d;
}

Matrix UndirectedGraph::adjacency_matrix() const {
    Matrix M = Matrix::Zero(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            if (i != j && edge(i, j)) M(i, j) = 1.0;
    return M;
}

UndirectedGraph Dag::skeleton() const {
    UndirectedGraph g = UndirectedGraph::empty(d);
    g.labels = labels;
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j)
            if (edge_to(i, j)) g.add_edge(i, j);
    return g;
}

Matrix partial_correlations(const Matrix& K) {
    const int d = static_cast<int>(K.rows());
    if (!is_symmetric(K))
        throw DimensionMismatch("partial_correlations: matrix is not symmetric");
    Eigen::LLT<Matrix> llt(K);
    if (llt.info() != Eigen::Success)
        throw NotPositiveDefinite("partial_correlations: concentration block is not PD");
    Matrix R = Matrix::Identity(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            if (i != j) R(i, j) = -K(i, j) / std::sqrt(K(i, i) * K(j, j));
    return R;
}

TestResult pcorr_t_test(double r, int n, int d, double alpha) {
    if (n <= d) throw DegenerateInput("pcorr_t_test: requires n > d");
    if (!(std::abs(r) < 1.0))
        throw DegenerateInput("pcorr_t_test: |r| must be below 1");
    TestResult res;
    res.dof = n - d;
    res.statistic = std::sqrt(double(n - d)) * r / std::sqrt(1.0 - r * r);
    boost::math::students_t dist(res.dof);
    res.p_value = 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(res.statistic)));
    res.reject = res.p_value < alpha;
    return res;
}

UndirectedGraph graph_from_threshold(const Matrix& pcorr, double tau) {
    UndirectedGraph g = UndirectedGraph::empty(static_cast<int>(pcorr.rows()));
    for (int i = 0; i < g.d; ++i)
        for (int j = i + 1; j < g.d; ++j)
            if (std::abs(pcorr(i, j)) >= tau) g.add_edge(i, j);
    return g;
}

UndirectedGraph graph_from_test(const Matrix& pcorr, int n, int d, double alpha) {
    UndirectedGraph g = UndirectedGraph::empty(static_cast<int>(pcorr.rows()));
    for (int i = 0; i < g.d; ++i)
        for (int j = i + 1; j < g.d; ++j)
            if (pcorr_t_test(pcorr(i, j), n, d, alpha).reject) g.add_edge(i, j);
    return g;
}

McsResult mcs_perfect_order(const UndirectedGraph& g, std::optional<int> start) {
    const int d = g.d;
    McsResult res;
    res.order.assign(size_t(d), -1);
    std::vector<int> label(size_t(d), 0);  // 1..d once assigned
    std::vector<int> weight(size_t(d), 0);
    std::vector<bool> done(size_t(d), false);

    const int first = start.value_or(d - 1);
    int next_label = d;
    int current = first;
    while (next_label >= 1) {
        done[size_t(current)] = true;
        label[size_t(current)] = next_label;
        res.order[size_t(next_label - 1)] = current;
        --next_label;
        for (int u = 0; u < d; ++u)
            if (g.edge(current, u) && !done[size_t(u)]) ++weight[size_t(u)];
        if (next_label == 0) break;
        // next node: maximum labelled-neighbour count, smallest index on ties
        int best = -1;
        for (int u = 0; u < d; ++u)
            if (!done[size_t(u)] && (best < 0 || weight[size_t(u)] > weight[size_t(best)]))
                best = u;
        current = best;
    }

    // Perfectness: the later-labelled neighbourhood of every node must be
    // complete (MCS alone can mislabel non-chordal graphs).
    res.perfect = true;
    for (int v = 0; v < d && res.perfect; ++v) {
        std::vector<int> later;
        for (int u = 0; u < d; ++u)
            if (g.edge(v, u) && label[size_t(u)] > label[size_t(v)]) later.push_back(u);
        for (size_t a = 0; a < later.size() && res.perfect; ++a)
            for (size_t b = a + 1; b < later.size() && res.perfect; ++b)
                if (!g.edge(later[a], later[b])) {
                    res.perfect = false;
                    res.violating_node = v;
                    res.missing_edge = {later[a], later[b]};
                }
    }
    return res;
}

JunctionTree junction_tree(const UndirectedGraph& g, const std::vector<int>& order) {
    const int d = g.d;
    if (static_cast<int>(order.size()) != d)
        throw DimensionMismatch("junction_tree: ordering length must equal d");
    std::vector<int> label(size_t(d), 0);
    for (int k = 0; k < d; ++k) label[size_t(order[size_t(k)])] = k + 1;

    // Verify the ordering is perfect for g.
    for (int v = 0; v < d; ++v) {
        std::vector<int> later;
        for (int u = 0; u < d; ++u)
            if (g.edge(v, u) && label[size_t(u)] > label[size_t(v)]) later.push_back(u);
        for (size_t a = 0; a < later.size(); ++a)
            for (size_t b = a + 1; b < later.size(); ++b)
                if (!g.edge(later[a], later[b]))
                    throw NotPerfectOrdering("junction_tree: ordering is not perfect");
    }

    // Candidate cliques {v} u later-neighbours, generated per node; keep the
    // maximal ones, sequenced by decreasing generator label (the order MCS
    // discovers them, which yields the running intersection property).
    struct Cand {
        int gen_label;
        std::vector<int> nodes;
    };
    std::vector<Cand> cands;
    for (int v = 0; v < d; ++v) {
        std::vector<int> c{v};
        for (int u = 0; u < d; ++u)
            if (g.edge(v, u) && label[size_t(u)] > label[size_t(v)]) c.push_back(u);
        cands.push_back({label[size_t(v)], sorted(std::move(c))});
    }
    std::vector<Cand> maximal;
    for (const auto& c : cands) {
        bool contained = false;
        for (const auto& o : cands)
            if (o.nodes.size() > c.nodes.size() && is_subset(c.nodes, o.nodes)) {
                contained = true;
                break;
            }
        if (!contained) maximal.push_back(c);
    }
    std::sort(maximal.begin(), maximal.end(),
              [](const Cand& a, const Cand& b) { return a.gen_label > b.gen_label; });

    JunctionTree jt;
    std::set<int> covered;
    for (size_t j = 0; j < maximal.size(); ++j) {
        const auto& C = maximal[j].nodes;
        std::vector<int> sep, resid;
        for (int v : C)
            (covered.count(v) ? sep : resid).push_back(v);
        jt.cliques.push_back(C);
        jt.residuals.push_back(resid);
        covered.insert(C.begin(), C.end());
        if (j == 0) continue;
        jt.separators.push_back(sep);
        int parent = -1;
        for (size_t i = 0; i < j; ++i)
            if (is_subset(sep, jt.cliques[i])) {
                parent = static_cast<int>(i);
                break;
            }
        if (parent < 0)
            throw NotPerfectOrdering("junction_tree: running intersection property failed");
        jt.parent.push_back(parent);
    }
    return jt;
}

RzpReport check_rzp(const Matrix& M, MatrixKind) {
    const int d = static_cast<int>(M.rows());
    RzpReport rep;
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) {
            if (M(i, j) != 0.0) continue;
            for (int h = 0; h < i; ++h)
                if (M(h, i) != 0.0 && M(h, j) != 0.0) {
                    rep.holds = false;
                    rep.violations.push_back({h, i, j});
                }
        }
    return rep;
}

Dag orient_dag(const UndirectedGraph& g, const std::vector<int>& order) {
    const int d = g.d;
    if (static_cast<int>(order.size()) != d)
        throw DimensionMismatch("orient_dag: ordering length must equal d");
    Dag dag;
    dag.d = d;
    dag.adjacency.assign(size_t(d), std::vector<bool>(size_t(d), false));
    for (int i = 0; i < d; ++i) {
        const int v = order[size_t(i)];
        dag.labels.push_back(v < static_cast<int>(g.labels.size())
                                 ? g.labels[size_t(v)]
                                 : "v" + std::to_string(v + 1));
        for (int j = i + 1; j < d; ++j)
            if (g.edge(v, order[size_t(j)])) dag.adjacency[size_t(i)][size_t(j)] = true;
    }
    return dag;
}

UndirectedGraph moralize(const Dag& dag) {
    UndirectedGraph g = dag.skeleton();
    for (int child = 0; child < dag.d; ++child) {
        std::vector<int> parents;
        for (int j = child + 1; j < dag.d; ++j)
            if (dag.edge_to(child, j)) parents.push_back(j);
        for (size_t a = 0; a < parents.size(); ++a)
            for (size_t b = a + 1; b < parents.size(); ++b)
                g.add_edge(parents[a], parents[b]);
    }
    return g;
}

FillInResult triangulate_fill_in(const UndirectedGraph& g) {
    FillInResult res{g, {}};
    const McsResult mcs = mcs_perfect_order(g);
    if (mcs.perfect) return res;  // already chordal, zero added edges
    std::vector<int> label(size_t(g.d), 0);
    for (int k = 0; k < g.d; ++k) label[size_t(mcs.order[size_t(k)])] = k + 1;
    // Elimination game in increasing label order.
    for (int k = 0; k < g.d; ++k) {
        const int v = mcs.order[size_t(k)];
        std::vector<int> later;
        for (int u = 0; u < g.d; ++u)
            if (res.graph.edge(v, u) && label[size_t(u)] > label[size_t(v)])
                later.push_back(u);
        for (size_t a = 0; a < later.size(); ++a)
            for (size_t b = a + 1; b < later.size(); ++b)
                if (!res.graph.edge(later[a], later[b])) {
                    res.graph.add_edge(later[a], later[b]);
                    res.added_edges.emplace_back(std::min(later[a], later[b]),
                                                 std::max(later[a], later[b]));
                }
    }
    return res;
}

namespace {

void bron_kerbosch(const UndirectedGraph& g, std::vector<int>& R, std::vector<int> P,
                   std::vector<int> X, std::vector<std::vector<int>>& out) {
    if (P.empty() && X.empty()) {
        out.push_back(sorted(R));
        return;
    }
    // pivot: vertex of P u X with most neighbours in P
    int pivot = -1, best = -1;
    for (const auto* S : {&P, &X})
        for (int u : *S) {
            int c = 0;
            for (int v : P)
                if (g.edge(u, v)) ++c;
            if (c > best) {
                best = c;
                pivot = u;
            }
        }
    std::vector<int> candidates;
    for (int v : P)
        if (pivot < 0 || !g.edge(pivot, v)) candidates.push_back(v);
    for (int v : candidates) {
        std::vector<int> Pn, Xn;
        for (int u : P)
            if (g.edge(v, u)) Pn.push_back(u);
        for (int u : X)
            if (g.edge(v, u)) Xn.push_back(u);
        R.push_back(v);
        bron_kerbosch(g, R, Pn, Xn, out);
        R.pop_back();
        P.erase(std::find(P.begin(), P.end(), v));
        X.push_back(v);
    }
}

}  // namespace

std::vector<std::vector<int>> maximal_cliques(const UndirectedGraph& g) {
    std::vector<std::vector<int>> out;
    std::vector<int> R, P(size_t(g.d)), X;
    for (int i = 0; i < g.d; ++i) P[size_t(i)] = i;
    bron_kerbosch(g, R, P, X, out);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace cvar
