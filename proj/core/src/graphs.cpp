#include "manifoldwalk/graphs.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace mw {

bool KnnGraph::has_edge(Eigen::Index i, Eigen::Index j) const {
    const auto& out = neighbors[static_cast<std::size_t>(i)];
    return std::binary_search(out.begin(), out.end(), j);
}

std::size_t KnnGraph::edge_count() const {
    std::size_t total = 0;
    for (const auto& out : neighbors) total += out.size();
    return total;
}

Eigen::MatrixXd pairwise_euclidean(const PointCloud& cloud) {
    const Eigen::Index n = cloud.size();
    if (n < 1) throw InvalidArgument("pairwise_euclidean: empty cloud");
    Eigen::MatrixXd d(n, n);
    d.diagonal().setZero();
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double v = (cloud.features.row(i) - cloud.features.row(j)).norm();
            d(i, j) = v;
            d(j, i) = v;
        }
    return d;
}

KnnGraph knn_graph(const PointCloud& cloud, int k, bool symmetrize) {
    const Eigen::Index n = cloud.size();
    if (n < 2) throw InvalidArgument("knn_graph: need at least two points");
    if (k < 1 || k >= n)
        throw InvalidArgument("knn_graph: k=" + std::to_string(k) +
                              " outside [1, n-1] with n=" + std::to_string(n));

    KnnGraph g;
    g.n = n;
    g.k = k;
    g.symmetrized = symmetrize;
    g.neighbors.resize(static_cast<std::size_t>(n));

    // Squared distances order the same as distances; ties fall to lower index.
    std::vector<std::pair<double, Eigen::Index>> cand(static_cast<std::size_t>(n - 1));
    for (Eigen::Index i = 0; i < n; ++i) {
        std::size_t m = 0;
        for (Eigen::Index j = 0; j < n; ++j) {
            if (j == i) continue;
            cand[m++] = {(cloud.features.row(i) - cloud.features.row(j)).squaredNorm(), j};
        }
        std::nth_element(cand.begin(), cand.begin() + (k - 1), cand.end());
        auto& out = g.neighbors[static_cast<std::size_t>(i)];
        out.resize(static_cast<std::size_t>(k));
        for (int m2 = 0; m2 < k; ++m2) out[static_cast<std::size_t>(m2)] = cand[static_cast<std::size_t>(m2)].second;
        std::sort(out.begin(), out.end());
    }

    if (symmetrize) {
        std::vector<std::vector<Eigen::Index>> incoming(static_cast<std::size_t>(n));
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j : g.neighbors[static_cast<std::size_t>(i)])
                incoming[static_cast<std::size_t>(j)].push_back(i);
        for (Eigen::Index i = 0; i < n; ++i) {
            auto& out = g.neighbors[static_cast<std::size_t>(i)];
            out.insert(out.end(), incoming[static_cast<std::size_t>(i)].begin(),
                       incoming[static_cast<std::size_t>(i)].end());
            std::sort(out.begin(), out.end());
            out.erase(std::unique(out.begin(), out.end()), out.end());
        }
    }
    return g;
}

AdjacencyMatrix adjacency(const KnnGraph& graph) {
    AdjacencyMatrix a;
    a.symmetrized = graph.symmetrized;
    a.entries = Eigen::MatrixXd::Zero(graph.n, graph.n);
    for (Eigen::Index i = 0; i < graph.n; ++i)
        for (Eigen::Index j : graph.neighbors[static_cast<std::size_t>(i)])
            a.entries(i, j) = 1.0;
    return a;
}

double spectral_radius(const AdjacencyMatrix& A, double tol, int max_iter) {
    const Eigen::Index n = A.n();
    if (n < 1) throw InvalidArgument("spectral_radius: empty matrix");
    if (A.entries.cols() != n) throw InvalidArgument("spectral_radius: matrix not square");

    Eigen::VectorXd x = Eigen::VectorXd::Ones(n) / std::sqrt(static_cast<double>(n));
    double lambda = 0.0;
    for (int it = 0; it < max_iter; ++it) {
        Eigen::VectorXd y = A.entries * x;
        const double norm = y.norm();
        if (norm == 0.0) return 0.0;  // x fell in the kernel; nilpotent-direction case
        const double prev = lambda;
        lambda = norm;
        x = y / norm;
        if (it > 0 && std::abs(lambda - prev) <= tol * std::max(lambda, 1.0)) return lambda;
    }
    throw ConvergenceError("spectral_radius: no convergence after " + std::to_string(max_iter) +
                               " iterations; last estimate " + std::to_string(lambda),
                           lambda);
}

double max_stable_t(const AdjacencyMatrix& A1, const AdjacencyMatrix& A2, double safety) {
    if (!(safety > 0.0 && safety < 1.0))
        throw InvalidArgument("max_stable_t: safety must lie in (0,1)");
    const double rho = std::max({spectral_radius(A1), spectral_radius(A2), 1e-12});
    return safety / rho;
}

}  // namespace mw
