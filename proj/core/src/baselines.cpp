#include "manifoldwalk/baselines.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace mw {

std::string measure_name(MeasureKind m) {
    switch (m) {
        case MeasureKind::cosine: return "cosine";
        case MeasureKind::rbf: return "rbf";
        case MeasureKind::procrustes: return "procrustes";
        case MeasureKind::wasserstein: return "wasserstein";
        case MeasureKind::hausdorff: return "hausdorff";
    }
    throw InvalidArgument("measure_name: bad enum value");
}

namespace {

void require_same_shape(const PointCloud& x1, const PointCloud& x2, const char* where) {
    if (x1.size() != x2.size() || x1.dim() != x2.dim())
        throw InvalidArgument(std::string(where) + ": shape mismatch, " +
                              std::to_string(x1.size()) + "x" + std::to_string(x1.dim()) +
                              " vs " + std::to_string(x2.size()) + "x" + std::to_string(x2.dim()));
}

}  // namespace

double cosine_distance(const PointCloud& x1, const PointCloud& x2) {
    require_same_shape(x1, x2, "cosine_distance");
    const double n1 = x1.features.norm();
    const double n2 = x2.features.norm();
    if (n1 == 0.0 || n2 == 0.0)
        throw InvalidArgument("cosine_distance: zero-norm input");
    const double dot = (x1.features.array() * x2.features.array()).sum();
    return 1.0 - dot / (n1 * n2);
}

double rbf_distance(const PointCloud& x1, const PointCloud& x2, double gamma) {
    if (x1.dim() != x2.dim())
        throw InvalidArgument("rbf_distance: feature dimension mismatch, " +
                              std::to_string(x1.dim()) + " vs " + std::to_string(x2.dim()));
    if (!(gamma > 0.0)) throw InvalidArgument("rbf_distance: gamma must be positive");

    auto mean_kernel = [gamma](const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
        double sum = 0.0;
        for (Eigen::Index i = 0; i < a.rows(); ++i)
            for (Eigen::Index j = 0; j < b.rows(); ++j)
                sum += std::exp(-gamma * (a.row(i) - b.row(j)).squaredNorm());
        return sum / (static_cast<double>(a.rows()) * static_cast<double>(b.rows()));
    };
    return mean_kernel(x1.features, x1.features) + mean_kernel(x2.features, x2.features) -
           2.0 * mean_kernel(x1.features, x2.features);
}

double default_rbf_gamma(const PointCloud& x1, const PointCloud& x2) {
    const double count =
        static_cast<double>(x1.features.size()) + static_cast<double>(x2.features.size());
    const double sum = x1.features.sum() + x2.features.sum();
    const double mean = sum / count;
    const double sq = (x1.features.array() - mean).square().sum() +
                      (x2.features.array() - mean).square().sum();
    const double var = sq / count;
    const double d = static_cast<double>(x1.dim());
    if (var * d <= 0.0) return 1.0;
    return 1.0 / (d * var);
}

double procrustes_disparity(const PointCloud& x1, const PointCloud& x2) {
    require_same_shape(x1, x2, "procrustes_disparity");

    auto standardize = [](const Eigen::MatrixXd& m) {
        Eigen::MatrixXd c = m.rowwise() - m.colwise().mean();
        const double norm = c.norm();
        if (norm == 0.0)
            throw InvalidArgument("procrustes_disparity: degenerate cloud (all rows identical)");
        return Eigen::MatrixXd(c / norm);
    };
    const Eigen::MatrixXd a = standardize(x1.features);
    const Eigen::MatrixXd b = standardize(x2.features);

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a.transpose() * b);
    const double s = svd.singularValues().sum();
    return std::max(0.0, 1.0 - s * s);
}

double wasserstein_distance(const PointCloud& x1, const PointCloud& x2) {
    if (x1.features.size() != x2.features.size())
        throw InvalidArgument("wasserstein_distance: entry count mismatch, " +
                              std::to_string(x1.features.size()) + " vs " +
                              std::to_string(x2.features.size()));
    auto flat_sorted = [](const Eigen::MatrixXd& m) {
        std::vector<double> v;
        v.reserve(static_cast<std::size_t>(m.size()));
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            for (Eigen::Index j = 0; j < m.cols(); ++j) v.push_back(m(i, j));
        std::sort(v.begin(), v.end());
        return v;
    };
    const std::vector<double> a = flat_sorted(x1.features);
    const std::vector<double> b = flat_sorted(x2.features);
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) sum += std::abs(a[i] - b[i]);
    return sum / static_cast<double>(a.size());
}

double hausdorff_distance(const PointCloud& x1, const PointCloud& x2) {
    if (x1.size() < 1 || x2.size() < 1)
        throw InvalidArgument("hausdorff_distance: empty cloud");
    if (x1.dim() != x2.dim())
        throw InvalidArgument("hausdorff_distance: feature dimension mismatch, " +
                              std::to_string(x1.dim()) + " vs " + std::to_string(x2.dim()));

    auto directed_sq = [](const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
        double worst = 0.0;
        for (Eigen::Index i = 0; i < a.rows(); ++i) {
            double best = std::numeric_limits<double>::infinity();
            for (Eigen::Index j = 0; j < b.rows(); ++j)
                best = std::min(best, (a.row(i) - b.row(j)).squaredNorm());
            worst = std::max(worst, best);
        }
        return worst;
    };
    return std::sqrt(std::max(directed_sq(x1.features, x2.features),
                              directed_sq(x2.features, x1.features)));
}

}  // namespace mw
