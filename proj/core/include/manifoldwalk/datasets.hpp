#pragma once

#include <cstdint>
#include <string>

#include "manifoldwalk/point_cloud.hpp"

namespace mw {

// Noise level 0..4 with the fixed sigma ladder 0, 0.078, 0.29, 0.64, 1.0.
struct NoiseSpec {
    int level = 0;
    double sigma = 0.0;
};

double noise_sigma(int level);
NoiseSpec noise_spec(int level);

// Synthetic manifolds. Class = equal-width bin of the manifold parameter;
// points are sampled stratified by bin so every class is nonempty.
LabeledPointCloud gen_swiss_roll(Eigen::Index n, int classes, std::uint64_t seed);
LabeledPointCloud gen_moons(Eigen::Index n, std::uint64_t seed);
LabeledPointCloud gen_s_curve(Eigen::Index n, int classes, std::uint64_t seed);

PointCloud add_noise(const PointCloud& cloud, const NoiseSpec& spec, std::uint64_t seed);

// Keeps exactly per_class labeled rows per class (uniform without
// replacement); the rest get label -1. Ground truth stays with the caller.
PartiallyLabeledCloud mask_labels(const LabeledPointCloud& data, int per_class,
                                  std::uint64_t seed);

// Per-feature affine map onto [0,1]; constant features map to all zeros.
PointCloud minmax_scale(const PointCloud& cloud);

// Delimited text (comma or whitespace), optional header row. label_column is
// a 0-based index (negative counts from the end) or a header name. Labels are
// re-encoded to contiguous [0,C) by sorted order of the distinct raw values.
LabeledPointCloud load_csv(const std::string& path, const std::string& label_column);

// Stratified subsample of size n preserving class proportions within one
// point per class; original row order is kept.
LabeledPointCloud subsample(const LabeledPointCloud& data, Eigen::Index n,
                            std::uint64_t seed);

}  // namespace mw
