#include <doctest.h>

#include <cmath>
#include <vector>

#include "manifoldwalk/datasets.hpp"
#include "manifoldwalk/graphs.hpp"
#include "manifoldwalk/similarity.hpp"
#include "manifoldwalk/transfer.hpp"
#include "support/oracles.hpp"

namespace {

mw::LabeledPointCloud labeled(std::initializer_list<std::initializer_list<double>> rows,
                              std::initializer_list<int> labels) {
    mw::LabeledPointCloud d;
    d.cloud.features.resize(static_cast<Eigen::Index>(rows.size()),
                            static_cast<Eigen::Index>(rows.begin()->size()));
    Eigen::Index i = 0;
    for (const auto& row : rows) {
        Eigen::Index j = 0;
        for (double v : row) d.cloud.features(i, j++) = v;
        ++i;
    }
    d.labels = labels;
    return d;
}

}  // namespace

TEST_SUITE("transfer") {

TEST_CASE("mean accuracy") {
    CHECK(mw::mean_accuracy({1, 2, 3}, {1, 2, 3}) == 1.0);
    CHECK(mw::mean_accuracy({0, 0, 0}, {1, 2, 3}) == 0.0);
    CHECK(mw::mean_accuracy({1, 2, 3, 0}, {1, 2, 3, 9}) == 0.75);
    CHECK_THROWS_AS((void)mw::mean_accuracy({1}, {1, 2}), mw::InvalidArgument);
    CHECK_THROWS_AS((void)mw::mean_accuracy({}, {}), mw::InvalidArgument);
}

TEST_CASE("baseline classifier on a hand built cloud") {
    // two tight clusters; the labeled rows sit at the cluster cores
    auto data = labeled({{0.0, 0.0}, {0.1, 0.0}, {10.0, 0.0}, {10.1, 0.0}}, {0, 0, 1, 1});
    mw::PartiallyLabeledCloud part;
    part.cloud = data.cloud;
    part.labels = {0, -1, 1, -1};
    part.labeled = {true, false, true, false};

    const auto pred = mw::baseline_classify(part, 1);
    REQUIRE(pred.size() == 2);
    CHECK(pred[0] == 0);
    CHECK(pred[1] == 1);

    // k above the labeled count is capped, not an error
    const auto pred_capped = mw::baseline_classify(part, 50);
    CHECK(pred_capped.size() == 2);

    part.labeled = {false, false, false, false};
    part.labels = {-1, -1, -1, -1};
    CHECK_THROWS_AS((void)mw::baseline_classify(part, 1), mw::InvalidArgument);
}

TEST_CASE("baseline classifier separates clean moons") {
    const auto data = mw::gen_moons(200, 505);
    const auto part = mw::mask_labels(data, 40, 506);
    std::vector<int> truth;
    for (Eigen::Index i = 0; i < part.size(); ++i)
        if (!part.labeled[static_cast<std::size_t>(i)])
            truth.push_back(data.labels[static_cast<std::size_t>(i)]);
    const auto pred = mw::baseline_classify(part, 5);
    CHECK(mw::mean_accuracy(pred, truth) > 0.95);
}

TEST_CASE("gate threshold semantics") {
    const auto target = mw::gen_moons(150, 601);
    const auto part = mw::mask_labels(target, 10, 602);
    mw::LabeledPointCloud source;
    source.cloud = mw::add_noise(target.cloud, mw::noise_spec(3), 603);
    source.labels = target.labels;

    mw::TransferConfig cfg;
    cfg.k = 8;
    const auto open = mw::transfer_classify(part, source, cfg);  // dt = inf
    REQUIRE_FALSE(open.gated);
    REQUIRE(open.predictions.has_value());
    CHECK(open.measured_distance > 0.0);

    // the gate fires strictly above DT, so DT equal to the measured distance
    // still lets the transfer run
    cfg.dt = open.measured_distance;
    const auto at_boundary = mw::transfer_classify(part, source, cfg);
    CHECK_FALSE(at_boundary.gated);
    CHECK(at_boundary.measured_distance == open.measured_distance);

    cfg.dt = open.measured_distance * 0.5;
    const auto shut = mw::transfer_classify(part, source, cfg);
    CHECK(shut.gated);
    CHECK_FALSE(shut.predictions.has_value());
    CHECK(shut.measured_distance == open.measured_distance);
}

TEST_CASE("gate measures the raw clouds, not the scaled ones") {
    // stretching one axis changes the raw graph but washes out under the
    // per-cloud min-max scaling used for classification
    const auto target = mw::gen_moons(150, 611);
    const auto part = mw::mask_labels(target, 10, 612);
    mw::LabeledPointCloud source;
    source.cloud = target.cloud;
    source.cloud.features.col(0) *= 3.0;
    source.labels = target.labels;

    mw::TransferConfig cfg;
    cfg.k = 8;
    const auto out = mw::transfer_classify(part, source, cfg);
    CHECK(out.measured_distance > 0.0);

    // a pure translation leaves the raw graph untouched
    mw::LabeledPointCloud shifted;
    shifted.cloud = target.cloud;
    shifted.cloud.features.array() += 100.0;
    shifted.labels = target.labels;
    const auto same = mw::transfer_classify(part, shifted, cfg);
    CHECK(same.measured_distance == 0.0);
    CHECK_FALSE(same.gated);
}

TEST_CASE("transfer argument validation") {
    const auto target = mw::gen_moons(60, 621);
    const auto part = mw::mask_labels(target, 5, 622);
    mw::LabeledPointCloud source;
    source.cloud = target.cloud;
    source.labels = target.labels;

    mw::TransferConfig cfg;
    cfg.k = 0;
    CHECK_THROWS_AS((void)mw::transfer_classify(part, source, cfg), mw::InvalidArgument);

    cfg.k = 5;
    cfg.dt = -1.0;
    CHECK_THROWS_AS((void)mw::transfer_classify(part, source, cfg), mw::InvalidArgument);

    cfg.dt = std::numeric_limits<double>::infinity();
    auto short_source = mw::subsample(source, 40, 623);
    CHECK_THROWS_AS((void)mw::transfer_classify(part, short_source, cfg), mw::InvalidArgument);
}

TEST_CASE("explicit t override is reported back") {
    const auto target = mw::gen_moons(80, 631);
    const auto part = mw::mask_labels(target, 8, 632);
    mw::LabeledPointCloud source;
    source.cloud = target.cloud;
    source.labels = target.labels;

    mw::TransferConfig cfg;
    cfg.k = 5;
    cfg.t = 0.05;
    const auto out = mw::transfer_classify(part, source, cfg);
    CHECK(out.t_used == 0.05);
}

TEST_CASE("fully labeled target yields empty predictions") {
    // per_class equal to the exact class size keeps every row labeled
    const auto target = mw::gen_moons(80, 641);
    const auto part = mw::mask_labels(target, 40, 642);
    for (bool b : part.labeled) CHECK(b);
    mw::LabeledPointCloud source;
    source.cloud = target.cloud;
    source.labels = target.labels;
    mw::TransferConfig cfg;
    cfg.k = 5;
    const auto out = mw::transfer_classify(part, source, cfg);
    CHECK_FALSE(out.gated);
    REQUIRE(out.predictions.has_value());
    CHECK(out.predictions->empty());
}

TEST_CASE("transfer agrees with a reassembled embedding classifier") {
    // rebuild the union walk embedding from verified pieces and classify with
    // the generic vote oracle; near-boundary float ties may swap a rare
    // neighbor pair, so demand near-total agreement rather than identity
    const auto target = mw::gen_swiss_roll(400, 4, 1001);
    const auto part = mw::mask_labels(target, 10, 1002);
    mw::LabeledPointCloud source;
    source.cloud = target.cloud;
    source.labels = target.labels;

    mw::TransferConfig cfg;
    cfg.k = 10;
    const auto out = mw::transfer_classify(part, source, cfg);
    REQUIRE_FALSE(out.gated);
    REQUIRE(out.predictions.has_value());

    const Eigen::Index ns = source.size();
    const Eigen::Index nt = target.size();
    mw::PointCloud uni;
    uni.features.resize(ns + nt, source.cloud.dim());
    uni.features.topRows(ns) = mw::minmax_scale(source.cloud).features;
    uni.features.bottomRows(nt) = mw::minmax_scale(part.cloud).features;
    const auto a = mw::adjacency(mw::knn_graph(uni, 10, false));
    const auto walk = mw::walk_matrix(a, mw::max_stable_t(a, a, 0.9));
    const Eigen::MatrixXd emb = mw::view(walk, mw::Variant::rows);

    std::vector<Eigen::Index> train_rows;
    std::vector<int> train_labels;
    for (Eigen::Index i = 0; i < ns; ++i) {
        train_rows.push_back(i);
        train_labels.push_back(source.labels[static_cast<std::size_t>(i)]);
    }
    for (Eigen::Index i = 0; i < nt; ++i)
        if (part.labeled[static_cast<std::size_t>(i)]) {
            train_rows.push_back(ns + i);
            train_labels.push_back(part.labels[static_cast<std::size_t>(i)]);
        }
    Eigen::MatrixXd train(static_cast<Eigen::Index>(train_rows.size()), emb.cols());
    for (std::size_t r = 0; r < train_rows.size(); ++r)
        train.row(static_cast<Eigen::Index>(r)) = emb.row(train_rows[r]);

    std::size_t p = 0, agree = 0, total = 0;
    for (Eigen::Index i = 0; i < nt; ++i) {
        if (part.labeled[static_cast<std::size_t>(i)]) continue;
        const Eigen::RowVectorXd query = emb.row(ns + i);
        const int expect = oracle::knn_vote(train, train_labels, query, 10);
        if (expect == (*out.predictions)[p]) ++agree;
        ++p;
        ++total;
    }
    CHECK(p == out.predictions->size());
    CHECK(total > 300);
    CHECK(static_cast<double>(agree) >= 0.97 * static_cast<double>(total));
}

TEST_CASE("identical source dominates the few shot baseline") {
    mw::DatasetSpec spec;
    spec.kind = mw::DatasetSpec::Kind::swiss_roll;
    spec.n = 300;
    spec.classes = 4;
    mw::TransferConfig cfg;
    cfg.k = 10;
    const auto r = mw::run_experiment(spec, 5, 0, 10, cfg, 99);
    CHECK(r.mean_distance == 0.0);
    CHECK(r.gated_fraction == 0.0);
    CHECK(r.with_tl.mean_accuracy >= 0.95);
    CHECK(r.with_tl.mean_accuracy >= r.without_tl.mean_accuracy);
}

TEST_CASE("experiment bookkeeping and determinism") {
    mw::DatasetSpec spec;
    spec.kind = mw::DatasetSpec::Kind::moons;
    spec.n = 150;
    mw::TransferConfig cfg;
    cfg.k = 8;

    const auto r1 = mw::run_experiment(spec, 10, 1, 4, cfg, 77, 1);
    CHECK(r1.with_tl.iterations == 4);
    CHECK(r1.with_tl.per_iteration.size() == 4);
    CHECK(r1.without_tl.per_iteration.size() == 4);
    double sum = 0;
    for (double a : r1.with_tl.per_iteration) sum += a;
    CHECK(r1.with_tl.mean_accuracy == doctest::Approx(sum / 4.0).epsilon(1e-15));
    for (double a : r1.with_tl.per_iteration) {
        CHECK(a >= 0.0);
        CHECK(a <= 1.0);
    }
    CHECK(r1.mean_distance > 0.0);

    // the thread count partitions work but never changes results
    const auto r2 = mw::run_experiment(spec, 10, 1, 4, cfg, 77, 3);
    CHECK(r1.with_tl.per_iteration == r2.with_tl.per_iteration);
    CHECK(r1.without_tl.per_iteration == r2.without_tl.per_iteration);
    CHECK(r1.with_tl.mean_accuracy == r2.with_tl.mean_accuracy);
    CHECK(r1.mean_distance == r2.mean_distance);
    CHECK(r1.gated_fraction == r2.gated_fraction);

    CHECK_THROWS_AS((void)mw::run_experiment(spec, 10, 1, 0, cfg, 77), mw::InvalidArgument);
}

TEST_CASE("a gated run falls back to the baseline column") {
    mw::DatasetSpec spec;
    spec.kind = mw::DatasetSpec::Kind::moons;
    spec.n = 150;
    mw::TransferConfig cfg;
    cfg.k = 8;
    cfg.dt = 0.0;  // any nonzero distance trips the gate
    const auto r = mw::run_experiment(spec, 10, 2, 4, cfg, 78);
    CHECK(r.gated_fraction == 1.0);
    CHECK(r.with_tl.per_iteration == r.without_tl.per_iteration);
    CHECK(r.with_tl.mean_accuracy == r.without_tl.mean_accuracy);
}

TEST_CASE("transfer keeps most of its edge at mild noise") {
    mw::DatasetSpec spec;
    spec.kind = mw::DatasetSpec::Kind::swiss_roll;
    spec.n = 400;
    spec.classes = 4;
    mw::TransferConfig cfg;
    cfg.k = 10;
    const auto r = mw::run_experiment(spec, 5, 1, 5, cfg, 101);
    CHECK(r.with_tl.mean_accuracy >= 0.85);
    CHECK(r.with_tl.mean_accuracy > r.without_tl.mean_accuracy);
}

TEST_CASE("accuracy decays as the source noise grows on moons") {
    mw::DatasetSpec spec;
    spec.kind = mw::DatasetSpec::Kind::moons;
    spec.n = 300;
    mw::TransferConfig cfg;
    cfg.k = 10;
    std::vector<double> levels, accs;
    for (int level = 1; level <= 4; ++level) {
        const auto r = mw::run_experiment(spec, 10, level, 8, cfg, 33);
        levels.push_back(level);
        accs.push_back(r.with_tl.mean_accuracy);
    }
    CHECK(accs.front() - accs.back() > 0.05);
    CHECK(oracle::spearman(levels, accs) <= -0.8);
}

}  // TEST_SUITE
