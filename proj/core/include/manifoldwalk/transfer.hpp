#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "manifoldwalk/point_cloud.hpp"
#include "manifoldwalk/similarity.hpp"

namespace mw {

struct TransferConfig {
    int k = 10;          // shared neighbor count
    int graph_k = 0;     // override for graph construction; 0 means use k
    int classify_k = 0;  // override for the vote; 0 means use k
    std::optional<double> t;  // walk parameter; unset means auto (0.9 safety)
    double dt = std::numeric_limits<double>::infinity();  // gate threshold
    Variant variant = Variant::rows;
    bool symmetrize = false;
    bool joint_scale = false;  // scale the union instead of each cloud alone
};

struct TransferOutcome {
    bool gated = false;
    // per unlabeled target row, ascending row order; present iff not gated
    std::optional<std::vector<int>> predictions;
    double measured_distance = 0.0;
    double t_used = 0.0;
};

struct AccuracyReport {
    double mean_accuracy = 0.0;
    std::vector<double> per_iteration;
    int iterations = 0;
};

struct DatasetSpec {
    enum class Kind { swiss_roll, moons, s_curve, table };
    Kind kind = Kind::swiss_roll;
    Eigen::Index n = 1000;
    int classes = 4;          // synthetic curve generators only
    LabeledPointCloud data;   // Kind::table only; subsampled to n per iteration
};

struct ExperimentResult {
    AccuracyReport with_tl;
    AccuracyReport without_tl;
    double mean_distance = 0.0;   // mean gate distance across iterations
    double gated_fraction = 0.0;  // fraction of iterations the gate fired
};

// Gate on the graph distance of the unscaled clouds, then min-max scale each
// cloud, build one k-NN graph over [source rows; target rows], and classify
// every unlabeled target row by majority vote of its k nearest training rows
// (source plus labeled target) in walk-embedding space. Distance ties fall to
// the lower union row index, vote ties to the lowest class id.
TransferOutcome transfer_classify(const PartiallyLabeledCloud& target,
                                  const LabeledPointCloud& source,
                                  const TransferConfig& cfg);

// Plain k-NN over min-max scaled target features, training on the labeled
// rows only; k is capped at the labeled-row count. Same tie-break rules.
std::vector<int> baseline_classify(const PartiallyLabeledCloud& target, int k);

double mean_accuracy(const std::vector<int>& predictions, const std::vector<int>& truth);

// Per iteration: derive a seed, draw the target, copy it, noise the copy into
// the source, mask target labels, run both classifiers against the retained
// truth. A gated iteration scores the with-transfer column at that
// iteration's baseline accuracy (no transfer happened, the fallback is the
// target-only classifier). Iterations with no unlabeled rows score 1.0.
ExperimentResult run_experiment(const DatasetSpec& spec, int per_class, int noise_level,
                                int iterations, const TransferConfig& cfg,
                                std::uint64_t seed, int threads = 1);

}  // namespace mw
