#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "cvar/graphs.hpp"

using namespace cvar;

namespace {

Matrix adj4(std::initializer_list<double> vals) {
    Matrix M(4, 4);
    int k = 0;
    for (double v : vals) {
        M(k / 4, k % 4) = v;
        ++k;
    }
    return M;
}

UndirectedGraph financial_graph() {
    // order NIK, EU, ISE, EM, BVSP, DAX, FTSE, SP; all pairs connected except
    // the seven weak contemporaneous pairs
    UndirectedGraph g = UndirectedGraph::complete(8);
    const auto drop = [&](int i, int j) {
        g.adjacency[size_t(i)][size_t(j)] = false;
        g.adjacency[size_t(j)][size_t(i)] = false;
    };
    drop(0, 1);  // NIK-EU
    drop(0, 2);  // NIK-ISE
    drop(0, 5);  // NIK-DAX
    drop(0, 6);  // NIK-FTSE
    drop(0, 7);  // NIK-SP
    drop(1, 3);  // EU-EM
    drop(1, 7);  // EU-SP
    return g;
}

UndirectedGraph cycle(int d) {
    UndirectedGraph g = UndirectedGraph::empty(d);
    for (int i = 0; i < d; ++i) g.add_edge(i, (i + 1) % d);
    return g;
}

UndirectedGraph random_graph(int d, double density, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unif;
    UndirectedGraph g = UndirectedGraph::empty(d);
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j)
            if (unif(rng) < density) g.add_edge(i, j);
    return g;
}

}  // namespace

TEST_CASE("partial correlations from a 2x2 concentration matrix") {
    Matrix K(2, 2);
    K << 2, -1, -1, 2;
    const Matrix r = partial_correlations(K);
    CHECK(r(0, 0) == 1.0);
    CHECK(r(0, 1) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(r(1, 0) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("partial correlation t-test") {
    // sqrt(100) * 0.5 / sqrt(0.75)
    const TestResult t = pcorr_t_test(0.5, 102, 2, 0.05);
    CHECK(t.statistic == doctest::Approx(5.773502691896258).epsilon(1e-12));
    CHECK(t.dof == 100);
    CHECK(t.p_value < 1e-6);
    CHECK(t.reject);

    const TestResult weak = pcorr_t_test(0.01, 102, 2, 0.05);
    CHECK_FALSE(weak.reject);
    CHECK(weak.p_value > 0.9);
}

TEST_CASE("threshold and test rules build the same graph when calibrated") {
    Matrix pc = Matrix::Identity(3, 3);
    pc(0, 1) = pc(1, 0) = 0.5;
    pc(1, 2) = pc(2, 1) = 0.02;
    pc(0, 2) = pc(2, 0) = -0.3;
    const UndirectedGraph g = graph_from_threshold(pc, 0.04);
    CHECK(g.edge(0, 1));
    CHECK(g.edge(0, 2));
    CHECK_FALSE(g.edge(1, 2));
    const UndirectedGraph h = graph_from_test(pc, 500, 3, 0.01);
    CHECK(h.edge(0, 1));
    CHECK_FALSE(h.edge(1, 2));
}

TEST_CASE("four 4x4 adjacency examples") {
    const Matrix M1 = adj4({1, 1, 1, 1, 1, 1, 0, 1, 1, 0, 1, 1, 1, 1, 1, 1});
    const Matrix M2 = adj4({1, 1, 0, 1, 1, 1, 1, 1, 0, 1, 1, 1, 1, 1, 1, 1});
    const Matrix M3 = adj4({1, 0, 1, 1, 0, 1, 0, 1, 1, 0, 1, 1, 1, 1, 1, 1});
    const Matrix M4 = adj4({1, 1, 0, 1, 1, 1, 1, 0, 0, 1, 1, 1, 1, 0, 1, 1});

    CHECK_FALSE(check_rzp(M1, MatrixKind::Symmetric).holds);
    CHECK(check_rzp(M2, MatrixKind::Symmetric).holds);
    CHECK(check_rzp(M3, MatrixKind::Symmetric).holds);

    // the first matrix violates through the 2,3 pair with common neighbour 1
    const auto report = check_rzp(M1, MatrixKind::Symmetric);
    REQUIRE(report.violations.size() >= 1);
    CHECK(report.violations[0].i == 1);
    CHECK(report.violations[0].j == 2);
    CHECK(report.violations[0].h == 0);

    // the last graph is a 4-cycle: no relabelling admits an RZP
    std::vector<int> perm = {0, 1, 2, 3};
    do {
        Matrix P = Matrix::Zero(4, 4);
        for (int i = 0; i < 4; ++i) P(i, perm[size_t(i)]) = 1.0;
        const Matrix M4p = P * M4 * P.transpose();
        CHECK_FALSE(check_rzp(M4p, MatrixKind::Symmetric).holds);
    } while (std::next_permutation(perm.begin(), perm.end()));

    const auto mcs = mcs_perfect_order(UndirectedGraph::from_adjacency(M4));
    CHECK_FALSE(mcs.perfect);
    CHECK(mcs.violating_node >= 0);
}

TEST_CASE("MCS produces a perfect order on chordal graphs and rejects cycles") {
    const auto good = mcs_perfect_order(financial_graph());
    CHECK(good.perfect);
    CHECK(good.order.size() == 8);

    CHECK_FALSE(mcs_perfect_order(cycle(4)).perfect);
    CHECK_FALSE(mcs_perfect_order(cycle(5)).perfect);
    CHECK(mcs_perfect_order(UndirectedGraph::complete(5)).perfect);
}

TEST_CASE("junction tree of the financial structure") {
    const UndirectedGraph g = financial_graph();
    std::vector<int> identity = {0, 1, 2, 3, 4, 5, 6, 7};
    const JunctionTree jt = junction_tree(g, identity);
    REQUIRE(jt.k() == 3);
    CHECK(jt.cliques[0] == std::vector<int>{2, 3, 4, 5, 6, 7});
    CHECK(jt.cliques[1] == std::vector<int>{1, 2, 4, 5, 6});
    CHECK(jt.cliques[2] == std::vector<int>{0, 3, 4});
    CHECK(jt.separators[0] == std::vector<int>{2, 4, 5, 6});
    CHECK(jt.separators[1] == std::vector<int>{3, 4});
    CHECK(jt.parent == std::vector<int>{0, 0});
}

TEST_CASE("junction tree rejects a non-perfect ordering") {
    std::vector<int> identity = {0, 1, 2, 3};
    CHECK_THROWS_AS(junction_tree(cycle(4), identity), NotPerfectOrdering);
}

TEST_CASE("junction tree invariants on random triangulated graphs") {
    std::mt19937_64 rng(123);
    for (int rep = 0; rep < 25; ++rep) {
        const int d = 4 + int(rng() % 6);
        UndirectedGraph g = triangulate_fill_in(random_graph(d, 0.4, rng)).graph;
        const auto mcs = mcs_perfect_order(g);
        REQUIRE(mcs.perfect);
        const JunctionTree jt = junction_tree(g, mcs.order);

        std::set<int> seen;
        for (int j = 0; j < jt.k(); ++j) {
            const auto& C = jt.cliques[size_t(j)];
            // cliques are complete in g
            for (size_t a = 0; a < C.size(); ++a)
                for (size_t b = a + 1; b < C.size(); ++b) CHECK(g.edge(C[a], C[b]));
            if (j > 0) {
                // running intersection: S_j = C_j ∩ (C_1 ∪ ... ∪ C_{j-1}),
                // contained in the parent clique
                std::vector<int> inter;
                for (int v : C)
                    if (seen.count(v)) inter.push_back(v);
                CHECK(jt.separators[size_t(j - 1)] == inter);
                const auto& P = jt.cliques[size_t(jt.parent[size_t(j - 1)])];
                for (int v : jt.separators[size_t(j - 1)])
                    CHECK(std::find(P.begin(), P.end(), v) != P.end());
                CHECK(jt.parent[size_t(j - 1)] < j);
            }
            // residuals partition the node set
            for (int v : jt.residuals[size_t(j)]) {
                CHECK_FALSE(seen.count(v));
                seen.insert(v);
            }
        }
        CHECK(int(seen.size()) == d);

        // cliques are maximal: no clique is contained in another
        for (int a = 0; a < jt.k(); ++a)
            for (int b = 0; b < jt.k(); ++b)
                if (a != b)
                    CHECK_FALSE(std::includes(jt.cliques[size_t(b)].begin(),
                                              jt.cliques[size_t(b)].end(),
                                              jt.cliques[size_t(a)].begin(),
                                              jt.cliques[size_t(a)].end()));
    }
}

TEST_CASE("orientation and moralization") {
    // path 0-1-2 oriented along the identity order has no sink V
    UndirectedGraph path = UndirectedGraph::empty(3);
    path.add_edge(0, 1);
    path.add_edge(1, 2);
    const Dag dag = orient_dag(path, {0, 1, 2});
    CHECK(dag.edge_to(0, 1));
    CHECK(dag.edge_to(1, 2));
    CHECK_FALSE(dag.edge_to(0, 2));
    const UndirectedGraph moral = moralize(dag);
    CHECK(moral.edge_count() == 2);

    // sink V: 1 -> 0 <- 2 marries 1 and 2
    Dag v;
    v.d = 3;
    v.adjacency.assign(3, std::vector<bool>(3, false));
    v.adjacency[0][1] = true;
    v.adjacency[0][2] = true;
    const UndirectedGraph mv = moralize(v);
    CHECK(mv.edge(1, 2));
    CHECK(mv.edge_count() == 3);
}

TEST_CASE("fill-in triangulation adds the minimum chords on small cycles") {
    const auto c4 = triangulate_fill_in(cycle(4));
    CHECK(c4.added_edges.size() == 1);
    CHECK(mcs_perfect_order(c4.graph).perfect);

    const auto c5 = triangulate_fill_in(cycle(5));
    CHECK(c5.added_edges.size() == 2);
    CHECK(mcs_perfect_order(c5.graph).perfect);

    // already chordal graphs are untouched
    const auto fin = triangulate_fill_in(financial_graph());
    CHECK(fin.added_edges.empty());
}

TEST_CASE("maximal cliques") {
    UndirectedGraph path = UndirectedGraph::empty(3);
    path.add_edge(0, 1);
    path.add_edge(1, 2);
    auto cliques = maximal_cliques(path);
    std::sort(cliques.begin(), cliques.end());
    CHECK(cliques == std::vector<std::vector<int>>{{0, 1}, {1, 2}});

    const auto full = maximal_cliques(UndirectedGraph::complete(4));
    REQUIRE(full.size() == 1);
    CHECK(full[0] == std::vector<int>{0, 1, 2, 3});
}

TEST_CASE("RZP of a DAG adjacency is exactly the absence of a sink V") {
    // upper triangular adjacency, edge j -> i for i < j
    Matrix M = Matrix::Zero(3, 3);
    M(0, 1) = 1;
    M(0, 2) = 1;  // sink V at node 0 when 1,2 are non-adjacent
    CHECK_FALSE(check_rzp(M, MatrixKind::UpperTriangular).holds);
    M(1, 2) = 1;
    CHECK(check_rzp(M, MatrixKind::UpperTriangular).holds);
}
