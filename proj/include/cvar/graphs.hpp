#ifndef CVAR_GRAPHS_HPP
#define CVAR_GRAPHS_HPP

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cvar/blockmat.hpp"

namespace cvar {

/// Simple undirected graph on labelled nodes, no self loops.
struct UndirectedGraph {
    int d = 0;
    std::vector<std::vector<bool>> adjacency;  // symmetric, false diagonal
    std::vector<std::string> labels;

    static UndirectedGraph empty(int d);
    static UndirectedGraph complete(int d);
    /// From a symmetric 0/1 matrix (diagonal ignored).
    static UndirectedGraph from_adjacency(const Matrix& M);

    bool edge(int i, int j) const { return adjacency[size_t(i)][size_t(j)]; }
    void add_edge(int i, int j);
    int edge_count() const;
    bool connected() const;
    Matrix adjacency_matrix() const;  // 0/1, zero diagonal
};

/// DAG in topological labelling: entry (i,j) with i < j means an edge j -> i,
/// stored strictly upper triangular.
struct Dag {
    int d = 0;
    std::vector<std::vector<bool>> adjacency;  // upper triangular use only
    std::vector<std::string> labels;

    bool edge_to(int i, int j) const { return adjacency[size_t(i)][size_t(j)]; }
    UndirectedGraph skeleton() const;
};

/// Perfect clique sequence with separators, residuals, and parent indices;
/// satisfies the running intersection property.
struct JunctionTree {
    std::vector<std::vector<int>> cliques;     // C_1..C_k, sorted node lists
    std::vector<std::vector<int>> separators;  // S_2..S_k (index j-1 for C_j)
    std::vector<std::vector<int>> residuals;   // R_1..R_k
    std::vector<int> parent;                   // parent[j-1] = 0-based parent of C_j, j >= 2

    int k() const noexcept { return static_cast<int>(cliques.size()); }
};

struct TestResult {
    double statistic = 0.0;
    int dof = 0;
    double p_value = 1.0;
    bool reject = false;
};

struct RzpViolation {
    int h, i, j;  // 0-based; m_ij == 0 but m_hi != 0 and m_hj != 0
};

struct RzpReport {
    bool holds = true;
    std::vector<RzpViolation> violations;
};

struct McsResult {
    bool perfect = false;
    /// order[k] is the node with label k+1; labels run 1..d, label d is the
    /// start node.
    std::vector<int> order;
    /// On failure: the node whose later-labelled neighbourhood is incomplete
    /// and one missing pair inside it.
    int violating_node = -1;
    std::pair<int, int> missing_edge{-1, -1};
};

/// Off-diagonal (i,j) = -k_ij / sqrt(k_ii k_jj), diagonal 1.
Matrix partial_correlations(const Matrix& K_block);

/// Two-sided Student-t test of a partial correlation with n - d degrees of
/// freedom; statistic sqrt(n-d) * r / sqrt(1 - r^2).
TestResult pcorr_t_test(double r, int n, int d, double alpha);

/// Threshold rule: edge iff |r_ij| >= tau.
UndirectedGraph graph_from_threshold(const Matrix& pcorr, double tau);
/// Test rule: edge iff the t-test rejects at level alpha.
UndirectedGraph graph_from_test(const Matrix& pcorr, int n, int d, double alpha);

/// Maximal cardinality search with perfectness verification. Ties broken to
/// the smallest original index; start defaults to node d-1 (label d).
/// Disconnected graphs are processed per component and concatenated.
McsResult mcs_perfect_order(const UndirectedGraph& g, std::optional<int> start = std::nullopt);

/// Clique sequence of a chordal graph under a perfect ordering; throws
/// NotPerfectOrdering if the ordering is not perfect for g.
JunctionTree junction_tree(const UndirectedGraph& g, const std::vector<int>& order);

enum class MatrixKind { Symmetric, UpperTriangular };

/// Reducible zero pattern check on a square matrix; zero entries are tested
/// literally, nonzero means "edge". For a DAG adjacency a violation is
/// exactly a sink V.
RzpReport check_rzp(const Matrix& M, MatrixKind kind);

/// Orient every undirected edge from the later node to the earlier one under
/// the given ordering (order[k] = node with label k+1).
Dag orient_dag(const UndirectedGraph& g, const std::vector<int>& order);

/// Skeleton plus marriage edges between common-child parents.
UndirectedGraph moralize(const Dag& dag);

struct FillInResult {
    UndirectedGraph graph;
    std::vector<std::pair<int, int>> added_edges;
};

/// Chordal supergraph via the elimination game along an MCS ordering.
FillInResult triangulate_fill_in(const UndirectedGraph& g);

/// Maximal cliques (Bron-Kerbosch); used by IPS on arbitrary graphs.
std::vector<std::vector<int>> maximal_cliques(const UndirectedGraph& g);

}  // namespace cvar

#endif
