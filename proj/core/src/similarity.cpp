#include "manifoldwalk/similarity.hpp"

#include <Eigen/LU>
#include <cmath>

namespace mw {

Variant parse_variant(const std::string& name) {
    if (name == "rows") return Variant::rows;
    if (name == "columns") return Variant::columns;
    if (name == "both" || name == "rows_and_columns") return Variant::rows_and_columns;
    throw InvalidArgument("unknown variant '" + name + "' (expected rows, columns, or both)");
}

std::string variant_name(Variant v) {
    switch (v) {
        case Variant::rows: return "rows";
        case Variant::columns: return "columns";
        case Variant::rows_and_columns: return "both";
    }
    throw InvalidArgument("variant_name: bad enum value");
}

WalkMatrix walk_matrix(const AdjacencyMatrix& A, double t) {
    const Eigen::Index n = A.n();
    if (n < 1) throw InvalidArgument("walk_matrix: empty adjacency");
    if (A.entries.cols() != n) throw InvalidArgument("walk_matrix: adjacency not square");
    if (!(t > 0.0)) throw InvalidArgument("walk_matrix: t must be positive");

    // Invertibility gate. A loose power-iteration estimate suffices: the
    // residual check below is the real guarantee.
    double rho;
    try {
        rho = spectral_radius(A, 1e-8, 2000);
    } catch (const ConvergenceError& e) {
        rho = e.last_estimate;
    }
    if (t * rho >= 1.0 - 1e-9)
        throw NumericalError("walk_matrix: t*rho(A) = " + std::to_string(t * rho) +
                             " leaves I - tA near-singular; reduce t");

    WalkMatrix out;
    out.t = t;
    out.adjacency = A.entries;
    const Eigen::MatrixXd M = Eigen::MatrixXd::Identity(n, n) - t * A.entries;
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(M);
    out.W = lu.solve(Eigen::MatrixXd::Identity(n, n));

    // Residual of (I - tA) W = I: full Frobenius norm when cheap, otherwise
    // evenly spaced probe columns each held to the per-column share.
    const double budget = 1e-8 * static_cast<double>(n);
    if (n <= 256) {
        const double r = (M * out.W - Eigen::MatrixXd::Identity(n, n)).norm();
        if (!(r <= budget))
            throw NumericalError("walk_matrix: solve residual " + std::to_string(r) +
                                 " exceeds tolerance; reduce t");
    } else {
        const double per_col = budget / std::sqrt(static_cast<double>(n));
        for (int p = 0; p < 8; ++p) {
            const Eigen::Index j = (n - 1) * p / 7;
            Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
            e(j) = 1.0;
            const double r = (M * out.W.col(j) - e).norm();
            if (!(r <= per_col))
                throw NumericalError("walk_matrix: solve residual " + std::to_string(r) +
                                     " in column " + std::to_string(j) +
                                     " exceeds tolerance; reduce t");
        }
    }
    if (!out.W.allFinite()) throw NumericalError("walk_matrix: non-finite entries; reduce t");
    return out;
}

Eigen::MatrixXd view(const WalkMatrix& W, Variant v) {
    switch (v) {
        case Variant::rows: return W.W;
        case Variant::columns: return W.W.transpose();
        case Variant::rows_and_columns: {
            Eigen::MatrixXd both(W.n(), 2 * W.n());
            both << W.W, W.W.transpose();
            return both;
        }
    }
    throw InvalidArgument("view: bad variant");
}

SimilarityResult manifold_distance(const AdjacencyMatrix& A1, const AdjacencyMatrix& A2,
                                   double t, Variant v) {
    if (A1.n() != A2.n())
        throw InvalidArgument("manifold_distance: size mismatch, " + std::to_string(A1.n()) +
                              " vs " + std::to_string(A2.n()));
    const WalkMatrix W1 = walk_matrix(A1, t);
    const WalkMatrix W2 = walk_matrix(A2, t);

    // ||D^T||_F = ||D||_F and ||[D | D^T]||_F = sqrt(2)*||D||_F, so one norm
    // serves every variant; computing each view separately would only differ
    // in summation order.
    const double base = (W1.W - W2.W).norm();
    SimilarityResult r;
    r.t = t;
    r.n = A1.n();
    r.variant = v;
    r.distance = (v == Variant::rows_and_columns) ? std::sqrt(2.0) * base : base;
    return r;
}

double point_distance(const WalkMatrix& W, Eigen::Index i, Eigen::Index j, Variant v) {
    const Eigen::Index n = W.n();
    if (i < 0 || i >= n || j < 0 || j >= n)
        throw InvalidArgument("point_distance: node index out of range");
    switch (v) {
        case Variant::rows: return (W.W.row(i) - W.W.row(j)).norm();
        case Variant::columns: return (W.W.col(i) - W.W.col(j)).norm();
        case Variant::rows_and_columns:
            return std::sqrt((W.W.row(i) - W.W.row(j)).squaredNorm() +
                             (W.W.col(i) - W.W.col(j)).squaredNorm());
    }
    throw InvalidArgument("point_distance: bad variant");
}

}  // namespace mw
