#pragma once

#include <vector>

#include "manifoldwalk/point_cloud.hpp"

namespace mw {

// Out-neighbor lists, each sorted ascending. Directed mode keeps out-degree
// exactly k; symmetrized mode closes the edge set under reversal.
struct KnnGraph {
    Eigen::Index n = 0;
    int k = 0;
    bool symmetrized = false;
    std::vector<std::vector<Eigen::Index>> neighbors;

    bool has_edge(Eigen::Index i, Eigen::Index j) const;
    std::size_t edge_count() const;
};

struct AdjacencyMatrix {
    Eigen::MatrixXd entries;  // values in {0,1}, zero diagonal
    bool symmetrized = false;

    Eigen::Index n() const { return entries.rows(); }
};

Eigen::MatrixXd pairwise_euclidean(const PointCloud& cloud);

// k nearest neighbors per node by Euclidean distance, ties broken by lower
// index. 1 <= k <= n-1.
KnnGraph knn_graph(const PointCloud& cloud, int k, bool symmetrize);

AdjacencyMatrix adjacency(const KnnGraph& graph);

// Largest-magnitude eigenvalue by power iteration from an all-ones start.
// Throws ConvergenceError carrying the last estimate when the cap is hit.
double spectral_radius(const AdjacencyMatrix& A, double tol = 1e-10, int max_iter = 10000);

// safety / max(rho(A1), rho(A2), 1e-12); both I - tA stay invertible with a
// convergent walk series for any t below the returned value.
double max_stable_t(const AdjacencyMatrix& A1, const AdjacencyMatrix& A2, double safety);

}  // namespace mw
