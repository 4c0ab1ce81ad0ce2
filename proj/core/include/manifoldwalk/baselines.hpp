#pragma once

#include <string>

#include "manifoldwalk/point_cloud.hpp"

namespace mw {

enum class MeasureKind { cosine, rbf, procrustes, wasserstein, hausdorff };

std::string measure_name(MeasureKind m);

// 1 - cosine similarity of the row-major flattened matrices.
double cosine_distance(const PointCloud& x1, const PointCloud& x2);

// Kernel two-sample statistic with k(a,b) = exp(-gamma ||a-b||^2):
// mean over X1 x X1 + mean over X2 x X2 - 2 mean over X1 x X2.
double rbf_distance(const PointCloud& x1, const PointCloud& x2, double gamma);

// 1 / (d * variance of all entries of both clouds pooled); 1.0 when the
// pooled variance vanishes.
double default_rbf_gamma(const PointCloud& x1, const PointCloud& x2);

// Minimal squared misfit after centering, unit-norm scaling, and the best
// orthogonal map (reflections allowed): 1 - (sum of singular values)^2.
double procrustes_disparity(const PointCloud& x1, const PointCloud& x2);

// Mean absolute difference of the sorted flattened entries (1-D optimal
// transport between the value distributions).
double wasserstein_distance(const PointCloud& x1, const PointCloud& x2);

double hausdorff_distance(const PointCloud& x1, const PointCloud& x2);

}  // namespace mw
