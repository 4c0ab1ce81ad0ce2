#include <benchmark/benchmark.h>

#include "manifoldwalk/datasets.hpp"
#include "manifoldwalk/graphs.hpp"
#include "manifoldwalk/imaging.hpp"
#include "manifoldwalk/rng.hpp"
#include "manifoldwalk/similarity.hpp"
#include "manifoldwalk/transfer.hpp"

namespace {

mw::PointCloud swiss_cloud(Eigen::Index n) {
    return mw::gen_swiss_roll(n, 4, 7).cloud;
}

void bm_knn_graph(benchmark::State& state) {
    const auto cloud = swiss_cloud(state.range(0));
    for (auto _ : state) {
        auto graph = mw::knn_graph(cloud, 10, false);
        benchmark::DoNotOptimize(graph.neighbors);
    }
}
BENCHMARK(bm_knn_graph)->Arg(500)->Arg(1000)->Arg(2000)->Unit(benchmark::kMillisecond);

void bm_walk_matrix(benchmark::State& state) {
    const auto cloud = swiss_cloud(state.range(0));
    const auto a = mw::adjacency(mw::knn_graph(cloud, 10, false));
    const double t = mw::max_stable_t(a, a, 0.9);
    for (auto _ : state) {
        auto w = mw::walk_matrix(a, t);
        benchmark::DoNotOptimize(w.W);
    }
}
BENCHMARK(bm_walk_matrix)->Arg(250)->Arg(500)->Arg(1000)->Unit(benchmark::kMillisecond);

void bm_manifold_distance(benchmark::State& state) {
    const Eigen::Index n = state.range(0);
    const auto a1 = mw::adjacency(mw::knn_graph(swiss_cloud(n), 10, false));
    const auto noisy = mw::add_noise(swiss_cloud(n), mw::noise_spec(2), 11);
    const auto a2 = mw::adjacency(mw::knn_graph(noisy, 10, false));
    const double t = mw::max_stable_t(a1, a2, 0.9);
    for (auto _ : state) {
        auto r = mw::manifold_distance(a1, a2, t, mw::Variant::rows);
        benchmark::DoNotOptimize(r.distance);
    }
}
BENCHMARK(bm_manifold_distance)->Arg(250)->Arg(500)->Unit(benchmark::kMillisecond);

void bm_transfer_classify(benchmark::State& state) {
    const Eigen::Index n = state.range(0);
    const auto source = mw::gen_swiss_roll(n, 4, 3);
    const auto target = mw::gen_swiss_roll(n, 4, 5);
    const auto masked = mw::mask_labels(target, 10, 9);
    mw::TransferConfig cfg;
    for (auto _ : state) {
        auto out = mw::transfer_classify(masked, source, cfg);
        benchmark::DoNotOptimize(out.predictions);
    }
}
BENCHMARK(bm_transfer_classify)->Arg(300)->Arg(600)->Unit(benchmark::kMillisecond);

mw::RasterImage noise_image(int side) {
    mw::Rng rng(13);
    mw::RasterImage img;
    img.width = side;
    img.height = side;
    img.pixels.resize(static_cast<std::size_t>(side) * side * 3);
    for (auto& p : img.pixels) p = static_cast<unsigned char>(rng.below(256));
    return img;
}

void bm_superpixel(benchmark::State& state) {
    const auto img = noise_image(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto out = mw::superpixel_centroid_image(img, 100, 21);
        benchmark::DoNotOptimize(out.pixels);
    }
}
BENCHMARK(bm_superpixel)->Arg(48)->Arg(96)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
