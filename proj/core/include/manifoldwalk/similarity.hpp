#pragma once

#include <string>

#include "manifoldwalk/graphs.hpp"

namespace mw {

// Which side of the walk matrix represents a node: its row, its column, or
// the concatenation of both.
enum class Variant { rows, columns, rows_and_columns };

Variant parse_variant(const std::string& name);        // "rows" | "columns" | "both"
std::string variant_name(Variant v);

// W solves (I - tA) W = I, i.e. the geometric series sum_m (tA)^m. Entry
// (i,j) accumulates t-discounted walk counts from i to j.
struct WalkMatrix {
    Eigen::MatrixXd W;
    double t = 0.0;
    Eigen::MatrixXd adjacency;  // the A this was built from

    Eigen::Index n() const { return W.rows(); }
};

struct SimilarityResult {
    double distance = 0.0;
    double t = 0.0;
    Eigen::Index n = 0;
    Variant variant = Variant::rows;
};

// Requires t > 0 and t * rho(A) < 1. Solves rather than inverts; verifies the
// residual of (I - tA) W = I before returning.
WalkMatrix walk_matrix(const AdjacencyMatrix& A, double t);

// Per-node embedding: rows -> W, columns -> W^T, rows_and_columns -> [W | W^T].
Eigen::MatrixXd view(const WalkMatrix& W, Variant v);

// Frobenius norm of the walk-matrix difference under the variant view.
// Graphs must be order-aligned: node i of A1 corresponds to node i of A2.
SimilarityResult manifold_distance(const AdjacencyMatrix& A1, const AdjacencyMatrix& A2,
                                   double t, Variant v);

// Euclidean distance between node embeddings i and j under the variant view.
double point_distance(const WalkMatrix& W, Eigen::Index i, Eigen::Index j, Variant v);

}  // namespace mw
