#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "manifoldwalk/errors.hpp"

namespace mw {

// Rows are points, columns are feature dimensions. Row order is identity:
// every transformation keeps row i referring to the same point.
struct PointCloud {
    Eigen::MatrixXd features;

    PointCloud() = default;
    explicit PointCloud(Eigen::MatrixXd f) : features(std::move(f)) {}

    Eigen::Index size() const { return features.rows(); }
    Eigen::Index dim() const { return features.cols(); }
};

struct LabeledPointCloud {
    PointCloud cloud;
    std::vector<int> labels;  // one per row, class ids 0..C-1

    Eigen::Index size() const { return cloud.size(); }
};

// labels[i] == -1 exactly where labeled[i] is false.
struct PartiallyLabeledCloud {
    PointCloud cloud;
    std::vector<int> labels;
    std::vector<bool> labeled;

    Eigen::Index size() const { return cloud.size(); }
};

inline int class_count(const std::vector<int>& labels) {
    int c = 0;
    for (int l : labels)
        if (l >= c) c = l + 1;
    return c;
}

inline void require_consistent(const LabeledPointCloud& d, const char* where) {
    if (static_cast<Eigen::Index>(d.labels.size()) != d.cloud.size())
        throw InvalidArgument(std::string(where) + ": label count does not match row count");
}

inline void require_consistent(const PartiallyLabeledCloud& d, const char* where) {
    if (static_cast<Eigen::Index>(d.labels.size()) != d.cloud.size() ||
        static_cast<Eigen::Index>(d.labeled.size()) != d.cloud.size())
        throw InvalidArgument(std::string(where) + ": label/mask count does not match row count");
}

}  // namespace mw
