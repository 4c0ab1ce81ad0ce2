#include "manifoldwalk/transfer.hpp"

#include <algorithm>
#include <numeric>

#include "manifoldwalk/datasets.hpp"
#include "manifoldwalk/parallel.hpp"
#include "manifoldwalk/rng.hpp"

namespace mw {
namespace {

// Squared cross distances via the gram expansion, clamped at zero.
Eigen::MatrixXd cross_sq_distances(const Eigen::MatrixXd& q, const Eigen::MatrixXd& t) {
    const Eigen::VectorXd qn = q.rowwise().squaredNorm();
    const Eigen::VectorXd tn = t.rowwise().squaredNorm();
    Eigen::MatrixXd d2 = -2.0 * (q * t.transpose());
    d2.colwise() += qn;
    d2.rowwise() += tn.transpose();
    return d2.cwiseMax(0.0);
}

// Majority vote over the k nearest training columns of one distance row.
// Distance ties fall to the lower tiebreak id, vote ties to the lowest class.
int vote(const Eigen::MatrixXd& d2, Eigen::Index row, const std::vector<int>& labels,
         const std::vector<Eigen::Index>& tiebreak, int k) {
    const Eigen::Index m = d2.cols();
    std::vector<Eigen::Index> order(static_cast<std::size_t>(m));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    const Eigen::Index kk = std::min<Eigen::Index>(k, m);
    std::partial_sort(order.begin(), order.begin() + kk, order.end(),
                      [&](Eigen::Index a, Eigen::Index b) {
                          const double da = d2(row, a), db = d2(row, b);
                          if (da != db) return da < db;
                          return tiebreak[static_cast<std::size_t>(a)] <
                                 tiebreak[static_cast<std::size_t>(b)];
                      });
    int max_label = 0;
    for (int l : labels) max_label = std::max(max_label, l);
    std::vector<int> votes(static_cast<std::size_t>(max_label) + 1, 0);
    for (Eigen::Index c = 0; c < kk; ++c)
        ++votes[static_cast<std::size_t>(labels[static_cast<std::size_t>(order[static_cast<std::size_t>(c)])])];
    int best = 0;
    for (std::size_t cls = 1; cls < votes.size(); ++cls)
        if (votes[cls] > votes[static_cast<std::size_t>(best)]) best = static_cast<int>(cls);
    return best;
}

Eigen::MatrixXd take_rows(const Eigen::MatrixXd& m, const std::vector<Eigen::Index>& rows) {
    Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()), m.cols());
    for (std::size_t r = 0; r < rows.size(); ++r) out.row(static_cast<Eigen::Index>(r)) = m.row(rows[r]);
    return out;
}

}  // namespace

TransferOutcome transfer_classify(const PartiallyLabeledCloud& target,
                                  const LabeledPointCloud& source,
                                  const TransferConfig& cfg) {
    require_consistent(target, "transfer_classify");
    require_consistent(source, "transfer_classify");
    if (source.cloud.dim() != target.cloud.dim())
        throw InvalidArgument("transfer_classify: feature dimension mismatch, source " +
                              std::to_string(source.cloud.dim()) + " vs target " +
                              std::to_string(target.cloud.dim()));
    if (source.size() != target.size())
        throw InvalidArgument("transfer_classify: size mismatch, source " +
                              std::to_string(source.size()) + " vs target " +
                              std::to_string(target.size()) + "; subsample first");
    const int gk = cfg.graph_k > 0 ? cfg.graph_k : cfg.k;
    const int ck = cfg.classify_k > 0 ? cfg.classify_k : cfg.k;
    if (cfg.k < 1) throw InvalidArgument("transfer_classify: k must be >= 1");
    if (!(cfg.dt >= 0.0)) throw InvalidArgument("transfer_classify: DT must be >= 0");

    // Gate on the raw clouds; scaling happens only once transfer is on.
    const AdjacencyMatrix a_target = adjacency(knn_graph(target.cloud, gk, cfg.symmetrize));
    const AdjacencyMatrix a_source = adjacency(knn_graph(source.cloud, gk, cfg.symmetrize));
    const double t_gate = cfg.t ? *cfg.t : max_stable_t(a_target, a_source, 0.9);
    const SimilarityResult sim = manifold_distance(a_target, a_source, t_gate, cfg.variant);

    TransferOutcome out;
    out.measured_distance = sim.distance;
    out.t_used = t_gate;
    if (sim.distance > cfg.dt) {
        out.gated = true;
        return out;
    }

    const Eigen::Index ns = source.size();
    const Eigen::Index nt = target.size();
    PointCloud uni;
    uni.features.resize(ns + nt, source.cloud.dim());
    if (cfg.joint_scale) {
        uni.features.topRows(ns) = source.cloud.features;
        uni.features.bottomRows(nt) = target.cloud.features;
        uni = minmax_scale(uni);
    } else {
        uni.features.topRows(ns) = minmax_scale(source.cloud).features;
        uni.features.bottomRows(nt) = minmax_scale(target.cloud).features;
    }

    const AdjacencyMatrix a_union = adjacency(knn_graph(uni, gk, cfg.symmetrize));
    const double t_union = cfg.t ? *cfg.t : max_stable_t(a_union, a_union, 0.9);
    const WalkMatrix walk = walk_matrix(a_union, t_union);
    out.t_used = t_union;

    // Union row i is source row i for i < ns, else target row i - ns.
    std::vector<Eigen::Index> train_rows;
    std::vector<int> train_labels;
    train_rows.reserve(static_cast<std::size_t>(ns + nt));
    for (Eigen::Index i = 0; i < ns; ++i) {
        train_rows.push_back(i);
        train_labels.push_back(source.labels[static_cast<std::size_t>(i)]);
    }
    for (Eigen::Index i = 0; i < nt; ++i) {
        if (!target.labeled[static_cast<std::size_t>(i)]) continue;
        train_rows.push_back(ns + i);
        train_labels.push_back(target.labels[static_cast<std::size_t>(i)]);
    }
    if (train_rows.empty()) throw InvalidArgument("transfer_classify: empty training set");

    std::vector<Eigen::Index> test_rows;
    for (Eigen::Index i = 0; i < nt; ++i)
        if (!target.labeled[static_cast<std::size_t>(i)]) test_rows.push_back(ns + i);

    out.predictions.emplace();
    if (test_rows.empty()) return out;

    const Eigen::MatrixXd emb = view(walk, cfg.variant);
    const Eigen::MatrixXd d2 = cross_sq_distances(take_rows(emb, test_rows), take_rows(emb, train_rows));
    out.predictions->reserve(test_rows.size());
    for (std::size_t r = 0; r < test_rows.size(); ++r)
        out.predictions->push_back(
            vote(d2, static_cast<Eigen::Index>(r), train_labels, train_rows, ck));
    return out;
}

std::vector<int> baseline_classify(const PartiallyLabeledCloud& target, int k) {
    require_consistent(target, "baseline_classify");
    if (k < 1) throw InvalidArgument("baseline_classify: k must be >= 1");

    std::vector<Eigen::Index> train_rows, test_rows;
    std::vector<int> train_labels;
    for (Eigen::Index i = 0; i < target.size(); ++i) {
        if (target.labeled[static_cast<std::size_t>(i)]) {
            train_rows.push_back(i);
            train_labels.push_back(target.labels[static_cast<std::size_t>(i)]);
        } else {
            test_rows.push_back(i);
        }
    }
    if (train_rows.empty()) throw InvalidArgument("baseline_classify: no labeled rows");
    if (test_rows.empty()) return {};

    const PointCloud scaled = minmax_scale(target.cloud);
    const Eigen::MatrixXd d2 =
        cross_sq_distances(take_rows(scaled.features, test_rows), take_rows(scaled.features, train_rows));
    std::vector<int> pred;
    pred.reserve(test_rows.size());
    for (std::size_t r = 0; r < test_rows.size(); ++r)
        pred.push_back(vote(d2, static_cast<Eigen::Index>(r), train_labels, train_rows, k));
    return pred;
}

double mean_accuracy(const std::vector<int>& predictions, const std::vector<int>& truth) {
    if (predictions.size() != truth.size())
        throw InvalidArgument("mean_accuracy: length mismatch, " +
                              std::to_string(predictions.size()) + " vs " +
                              std::to_string(truth.size()));
    if (predictions.empty()) throw InvalidArgument("mean_accuracy: empty inputs");
    std::size_t hits = 0;
    for (std::size_t i = 0; i < truth.size(); ++i)
        if (predictions[i] == truth[i]) ++hits;
    return static_cast<double>(hits) / static_cast<double>(truth.size());
}

ExperimentResult run_experiment(const DatasetSpec& spec, int per_class, int noise_level,
                                int iterations, const TransferConfig& cfg,
                                std::uint64_t seed, int threads) {
    if (iterations < 1) throw InvalidArgument("run_experiment: iterations must be >= 1");
    const NoiseSpec noise = noise_spec(noise_level);

    std::vector<double> acc_tl(static_cast<std::size_t>(iterations));
    std::vector<double> acc_base(static_cast<std::size_t>(iterations));
    std::vector<double> distances(static_cast<std::size_t>(iterations));
    std::vector<char> gated(static_cast<std::size_t>(iterations), 0);

    parallel_for(static_cast<std::size_t>(iterations), threads, [&](std::size_t i) {
        const std::uint64_t seed_i = derive_seed(seed, i + 1);
        const std::uint64_t data_seed = derive_seed(seed_i, 1);
        const std::uint64_t noise_seed = derive_seed(seed_i, 2);
        const std::uint64_t mask_seed = derive_seed(seed_i, 3);

        LabeledPointCloud target;
        switch (spec.kind) {
            case DatasetSpec::Kind::swiss_roll:
                target = gen_swiss_roll(spec.n, spec.classes, data_seed);
                break;
            case DatasetSpec::Kind::moons:
                target = gen_moons(spec.n, data_seed);
                break;
            case DatasetSpec::Kind::s_curve:
                target = gen_s_curve(spec.n, spec.classes, data_seed);
                break;
            case DatasetSpec::Kind::table:
                target = subsample(spec.data, std::min(spec.n, spec.data.size()), data_seed);
                break;
        }

        LabeledPointCloud source;
        source.cloud = add_noise(target.cloud, noise, noise_seed);
        source.labels = target.labels;

        const PartiallyLabeledCloud masked = mask_labels(target, per_class, mask_seed);
        std::vector<int> truth;
        for (Eigen::Index r = 0; r < masked.size(); ++r)
            if (!masked.labeled[static_cast<std::size_t>(r)])
                truth.push_back(target.labels[static_cast<std::size_t>(r)]);

        const int ck = cfg.classify_k > 0 ? cfg.classify_k : cfg.k;
        double base_acc = 1.0;
        if (!truth.empty()) base_acc = mean_accuracy(baseline_classify(masked, ck), truth);

        const TransferOutcome tl = transfer_classify(masked, source, cfg);
        double tl_acc = base_acc;
        if (!tl.gated && !truth.empty()) tl_acc = mean_accuracy(*tl.predictions, truth);

        acc_tl[i] = tl_acc;
        acc_base[i] = base_acc;
        distances[i] = tl.measured_distance;
        gated[i] = tl.gated ? 1 : 0;
    });

    auto report = [iterations](const std::vector<double>& acc) {
        AccuracyReport r;
        r.per_iteration = acc;
        r.iterations = iterations;
        double sum = 0.0;
        for (double a : acc) sum += a;
        r.mean_accuracy = sum / static_cast<double>(iterations);
        return r;
    };

    ExperimentResult result;
    result.with_tl = report(acc_tl);
    result.without_tl = report(acc_base);
    double dsum = 0.0;
    int gcount = 0;
    for (std::size_t i = 0; i < distances.size(); ++i) {
        dsum += distances[i];
        gcount += gated[i];
    }
    result.mean_distance = dsum / static_cast<double>(iterations);
    result.gated_fraction = static_cast<double>(gcount) / static_cast<double>(iterations);
    return result;
}

}  // namespace mw
