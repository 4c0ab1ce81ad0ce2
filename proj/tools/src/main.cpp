#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "manifoldwalk/baselines.hpp"
#include "manifoldwalk/datasets.hpp"
#include "manifoldwalk/graphs.hpp"
#include "manifoldwalk/image_io.hpp"
#include "manifoldwalk/imaging.hpp"
#include "manifoldwalk/parallel.hpp"
#include "manifoldwalk/rng.hpp"
#include "manifoldwalk/similarity.hpp"
#include "manifoldwalk/transfer.hpp"

#include "report.hpp"

namespace fs = std::filesystem;

namespace {

struct GlobalOptions {
    std::uint64_t seed = 42;
    int threads = 1;
    int k = 0;  // 0 = command default (10 tabular, 8 images)
    double t = 0.0;
    bool t_set = false;
    std::string dt = "auto";
    std::string variant = "rows";
    bool symmetrize = false;
    bool quick = false;
    std::string out;
    std::string data_dir;
};

struct DtSetting {
    enum class Mode { automatic, infinite, fixed };
    Mode mode = Mode::automatic;
    double value = std::numeric_limits<double>::infinity();
};

DtSetting parse_dt(const std::string& s) {
    DtSetting d;
    if (s == "auto") {
        d.mode = DtSetting::Mode::automatic;
        return d;
    }
    if (s == "inf" || s == "infinity") {
        d.mode = DtSetting::Mode::infinite;
        return d;
    }
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size() || !(v >= 0.0)) throw std::invalid_argument(s);
        d.mode = DtSetting::Mode::fixed;
        d.value = v;
        return d;
    } catch (const std::exception&) {
        throw mw::InvalidArgument("--dt must be a nonnegative number, 'inf', or 'auto', got '" +
                                  s + "'");
    }
}

// Frobenius distance of two precomputed walk matrices; same variant identity
// as manifold_distance (transposing preserves the norm, concatenation scales
// it by sqrt(2)).
double walk_diff(const mw::WalkMatrix& a, const mw::WalkMatrix& b, mw::Variant v) {
    const double base = (a.W - b.W).norm();
    return v == mw::Variant::rows_and_columns ? std::sqrt(2.0) * base : base;
}

std::string lower_ext(const std::string& path) {
    std::string ext = fs::path(path).extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return ext;
}

bool is_image_path(const std::string& path) {
    const std::string ext = lower_ext(path);
    return ext == ".png" || ext == ".ppm";
}

struct GeneratorSpec {
    std::string kind;  // swiss | moons | scurve
    Eigen::Index n = 0;
    int classes = 4;
};

// swiss[:n[:classes]] etc. Returns nullopt when the argument is not a
// generator name (then it is treated as a file path).
std::optional<GeneratorSpec> parse_generator(const std::string& arg, Eigen::Index default_n) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (;;) {
        const std::size_t colon = arg.find(':', start);
        parts.push_back(arg.substr(start, colon - start));
        if (colon == std::string::npos) break;
        start = colon + 1;
    }
    if (parts[0] != "swiss" && parts[0] != "moons" && parts[0] != "scurve") return std::nullopt;

    GeneratorSpec spec;
    spec.kind = parts[0];
    spec.n = default_n;
    try {
        if (parts.size() >= 2) spec.n = static_cast<Eigen::Index>(std::stoll(parts[1]));
        if (parts.size() >= 3) {
            if (spec.kind == "moons")
                throw mw::InvalidArgument("moons generator takes no classes field: " + arg);
            spec.classes = std::stoi(parts[2]);
        }
        if (parts.size() > 3) throw mw::InvalidArgument("malformed generator spec: " + arg);
    } catch (const mw::InvalidArgument&) {
        throw;
    } catch (const std::exception&) {
        throw mw::InvalidArgument("malformed generator spec: " + arg);
    }
    if (spec.n < 2) throw mw::InvalidArgument("generator spec needs n >= 2: " + arg);
    return spec;
}

mw::LabeledPointCloud realize_generator(const GeneratorSpec& spec, std::uint64_t data_seed) {
    if (spec.kind == "swiss") return mw::gen_swiss_roll(spec.n, spec.classes, data_seed);
    if (spec.kind == "moons") return mw::gen_moons(spec.n, data_seed);
    return mw::gen_s_curve(spec.n, spec.classes, data_seed);
}

std::string markdown_path(const std::string& csv_path) {
    fs::path p(csv_path);
    if (p.extension() == ".csv")
        p.replace_extension(".md");
    else
        p += ".md";
    return p.string();
}

// ---------------------------------------------------------------- similarity

struct SimilarityOptions {
    std::string input_a, input_b;
    int noise_a = 0, noise_b = 0;
    std::string label_col = "-1";
    int max_dim = 48;
    int superpixel = 0;
    bool no_xy = false;
    bool normalized = false;
    std::string dump_adjacency;
};

int cmd_similarity(const GlobalOptions& g, const SimilarityOptions& o) {
    const bool img_a = is_image_path(o.input_a);
    const bool img_b = is_image_path(o.input_b);
    const Eigen::Index default_n = g.quick ? 300 : 1000;

    mw::PointCloud cloud_a, cloud_b;
    int k = g.k;
    if (img_a || img_b) {
        if (!(img_a && img_b))
            throw mw::InvalidArgument("cannot compare an image with a tabular dataset");
        mw::RasterImage a = mw::load_image(o.input_a);
        mw::RasterImage b = mw::load_image(o.input_b);
        const int tw = std::min({a.width, b.width, o.max_dim});
        const int th = std::min({a.height, b.height, o.max_dim});
        a = mw::resize(a, tw, th);
        b = mw::resize(b, tw, th);
        if (o.superpixel > 0) {
            // one seed for both sides: identical preprocessing, comparable outputs
            const std::uint64_t sp_seed = mw::derive_seed(g.seed, 6);
            a = mw::superpixel_centroid_image(a, o.superpixel, sp_seed);
            b = mw::superpixel_centroid_image(b, o.superpixel, sp_seed);
        }
        cloud_a = mw::image_to_point_cloud(a, !o.no_xy);
        cloud_b = mw::image_to_point_cloud(b, !o.no_xy);
        if (k == 0) k = 8;
    } else {
        auto resolve = [&](const std::string& arg) -> mw::LabeledPointCloud {
            // identical generator specs on both sides share the data seed, so
            // "swiss vs swiss plus noise" really compares a cloud with its copy
            if (auto spec = parse_generator(arg, default_n))
                return realize_generator(*spec, mw::derive_seed(g.seed, 1));
            return mw::load_csv(arg, o.label_col);
        };
        mw::LabeledPointCloud a = resolve(o.input_a);
        mw::LabeledPointCloud b = resolve(o.input_b);
        if (a.cloud.dim() != b.cloud.dim())
            throw mw::InvalidArgument("dimension mismatch: " + std::to_string(a.cloud.dim()) +
                                      " vs " + std::to_string(b.cloud.dim()));
        const Eigen::Index n = std::min(a.size(), b.size());
        if (a.size() > n) a = mw::subsample(a, n, mw::derive_seed(g.seed, 4));
        if (b.size() > n) b = mw::subsample(b, n, mw::derive_seed(g.seed, 5));
        cloud_a = mw::add_noise(a.cloud, mw::noise_spec(o.noise_a), mw::derive_seed(g.seed, 2));
        cloud_b = mw::add_noise(b.cloud, mw::noise_spec(o.noise_b), mw::derive_seed(g.seed, 3));
        if (k == 0) k = 10;
    }

    const mw::AdjacencyMatrix a1 = mw::adjacency(mw::knn_graph(cloud_a, k, g.symmetrize));
    const mw::AdjacencyMatrix a2 = mw::adjacency(mw::knn_graph(cloud_b, k, g.symmetrize));
    const double t = g.t_set ? g.t : mw::max_stable_t(a1, a2, 0.9);
    const mw::SimilarityResult r = mw::manifold_distance(a1, a2, t, mw::parse_variant(g.variant));

    if (!o.dump_adjacency.empty()) {
        mw::save_matrix_text(a1.entries, o.dump_adjacency + ".a.txt");
        mw::save_matrix_text(a2.entries, o.dump_adjacency + ".b.txt");
    }

    std::printf("distance=%s\n", mwcli::format_distance(r.distance).c_str());
    std::printf("t=%s\n", mwcli::format_distance(r.t).c_str());
    std::printf("n=%lld\n", static_cast<long long>(r.n));
    std::printf("variant=%s\n", mw::variant_name(r.variant).c_str());
    if (o.normalized) {
        const double score = 1.0 / (1.0 + r.distance / static_cast<double>(r.n));
        std::printf("normalized=%s\n", mwcli::format_distance(score).c_str());
    }
    return 0;
}

// ------------------------------------------------------------------- figure1

int cmd_figure1(const GlobalOptions& g) {
    const Eigen::Index n = g.quick ? 300 : 1000;
    const int seeds = g.quick ? 5 : 20;
    const int k = g.k > 0 ? g.k : 10;
    const mw::Variant variant = mw::parse_variant(g.variant);
    const std::vector<std::string> measures = {"walk",       "cosine",      "rbf",
                                               "procrustes", "wasserstein", "hausdorff"};

    // values[level][measure][seed]
    std::vector<std::vector<std::vector<double>>> values(
        5, std::vector<std::vector<double>>(measures.size(),
                                            std::vector<double>(static_cast<std::size_t>(seeds))));

    mw::parallel_for(static_cast<std::size_t>(seeds), g.threads, [&](std::size_t s) {
        const std::uint64_t seed_s = mw::derive_seed(g.seed, s + 1);
        const mw::LabeledPointCloud clean = mw::gen_swiss_roll(n, 4, mw::derive_seed(seed_s, 1));
        const mw::AdjacencyMatrix a1 =
            mw::adjacency(mw::knn_graph(clean.cloud, k, g.symmetrize));

        double t_cached = -1.0;
        mw::WalkMatrix w1;
        for (int level = 0; level <= 4; ++level) {
            const mw::PointCloud noisy = mw::add_noise(clean.cloud, mw::noise_spec(level),
                                                       mw::derive_seed(seed_s, 2, level));
            const mw::AdjacencyMatrix a2 = mw::adjacency(mw::knn_graph(noisy, k, g.symmetrize));
            const double t = g.t_set ? g.t : mw::max_stable_t(a1, a2, 0.9);
            if (t != t_cached) {
                w1 = mw::walk_matrix(a1, t);
                t_cached = t;
            }
            const mw::WalkMatrix w2 = mw::walk_matrix(a2, t);

            auto& row = values[static_cast<std::size_t>(level)];
            row[0][s] = walk_diff(w1, w2, variant);
            row[1][s] = mw::cosine_distance(clean.cloud, noisy);
            row[2][s] = mw::rbf_distance(clean.cloud, noisy,
                                         mw::default_rbf_gamma(clean.cloud, noisy));
            row[3][s] = mw::procrustes_disparity(clean.cloud, noisy);
            row[4][s] = mw::wasserstein_distance(clean.cloud, noisy);
            row[5][s] = mw::hausdorff_distance(clean.cloud, noisy);
        }
    });

    std::vector<mwcli::Figure1Row> rows;
    for (int level = 0; level <= 4; ++level) {
        for (std::size_t m = 0; m < measures.size(); ++m) {
            const auto& v = values[static_cast<std::size_t>(level)][m];
            double sum = 0.0;
            for (double x : v) sum += x;
            const double mean = sum / static_cast<double>(v.size());
            double sq = 0.0;
            for (double x : v) sq += (x - mean) * (x - mean);
            const double sd = v.size() > 1 ? std::sqrt(sq / static_cast<double>(v.size() - 1)) : 0.0;
            rows.push_back({level, mw::noise_sigma(level), measures[m], mean, sd});
        }
    }

    const std::string out = g.out.empty() ? "figure1.csv" : g.out;
    mwcli::write_figure1_csv(rows, out);
    std::printf("wrote %s (%zu rows, %d seeds, n=%lld)\n", out.c_str(), rows.size(), seeds,
                static_cast<long long>(n));
    return 0;
}

// -------------------------------------------------------------------- tables

struct TablesOptions {
    std::vector<int> per_class = {10, 20, 30, 40};
    std::vector<int> noise = {1, 2, 3, 4};
    int iterations = 20;
    bool iterations_set = false;
    Eigen::Index n = 1000;
    bool n_set = false;
    int classes = 4;
    std::vector<std::string> datasets;  // empty = synthetic trio + real if data dir set
};

struct NamedDataset {
    std::string name;
    std::uint64_t id;  // stable across --datasets filters
    mw::DatasetSpec spec;
};

std::vector<NamedDataset> resolve_datasets(const GlobalOptions& g, const TablesOptions& o,
                                           Eigen::Index n) {
    struct RealFile {
        const char* name;
        const char* file;
        std::uint64_t id;
    };
    const std::vector<RealFile> real = {{"banknotes", "data_banknote_authentication.txt", 4},
                                        {"pendigits", "pendigits.tra", 5},
                                        {"satlog", "sat.trn", 6}};

    std::vector<std::string> wanted = o.datasets;
    if (wanted.empty()) {
        wanted = {"swiss", "moons", "scurve"};
        if (!g.data_dir.empty())
            for (const auto& r : real) wanted.push_back(r.name);
    }

    std::vector<std::string> missing;
    std::vector<NamedDataset> out;
    for (const auto& name : wanted) {
        NamedDataset d;
        d.name = name;
        d.spec.n = n;
        d.spec.classes = o.classes;
        if (name == "swiss") {
            d.id = 1;
            d.spec.kind = mw::DatasetSpec::Kind::swiss_roll;
        } else if (name == "moons") {
            d.id = 2;
            d.spec.kind = mw::DatasetSpec::Kind::moons;
        } else if (name == "scurve") {
            d.id = 3;
            d.spec.kind = mw::DatasetSpec::Kind::s_curve;
        } else {
            const auto it = std::find_if(real.begin(), real.end(),
                                         [&](const RealFile& r) { return name == r.name; });
            if (it == real.end())
                throw mw::InvalidArgument(
                    "unknown dataset '" + name +
                    "' (expected swiss, moons, scurve, banknotes, pendigits, satlog)");
            if (g.data_dir.empty())
                throw mw::InvalidArgument("dataset '" + name +
                                          "' needs --data-dir (or MANIFOLDWALK_DATA_DIR) "
                                          "pointing at " +
                                          std::string(it->file));
            const std::string path = (fs::path(g.data_dir) / it->file).string();
            if (!fs::exists(path)) {
                missing.push_back(it->file);
                continue;
            }
            d.id = it->id;
            d.spec.kind = mw::DatasetSpec::Kind::table;
            d.spec.data = mw::load_csv(path, "-1");
            d.spec.n = std::min(n, d.spec.data.size());
        }
        out.push_back(std::move(d));
    }
    if (!missing.empty()) {
        std::string msg = "missing data files in " + g.data_dir + ":";
        for (const auto& f : missing) msg += " " + f;
        throw mw::InvalidArgument(msg);
    }
    return out;
}

int cmd_tables(const GlobalOptions& g, const TablesOptions& o) {
    const Eigen::Index n = (g.quick && !o.n_set) ? 300 : o.n;
    const int iterations = (g.quick && !o.iterations_set) ? 5 : o.iterations;
    const DtSetting dts = parse_dt(g.dt);

    for (int level : o.noise) mw::noise_sigma(level);  // validates the list up front

    mw::TransferConfig cfg;
    cfg.k = g.k > 0 ? g.k : 10;
    if (g.t_set) cfg.t = g.t;
    cfg.variant = mw::parse_variant(g.variant);
    cfg.symmetrize = g.symmetrize;

    const std::vector<NamedDataset> datasets = resolve_datasets(g, o, n);
    const bool calibrate = dts.mode == DtSetting::Mode::automatic &&
                           std::find(o.noise.begin(), o.noise.end(), 2) != o.noise.end();
    if (dts.mode == DtSetting::Mode::automatic && !calibrate)
        std::fprintf(stderr,
                     "note: --dt auto calibrates on noise level 2, which is not in the sweep; "
                     "gating disabled\n");

    std::vector<mwcli::TableRow> rows;
    for (const auto& d : datasets) {
        for (int per_class : o.per_class) {
            const std::uint64_t cell_seed = mw::derive_seed(g.seed, d.id, per_class);

            // run the calibration level first so its mean distance can gate
            // the other levels of this group
            std::vector<int> order = o.noise;
            std::sort(order.begin(), order.end());
            if (calibrate) {
                auto it = std::find(order.begin(), order.end(), 2);
                std::rotate(order.begin(), it, it + 1);
            }

            double group_dt = dts.mode == DtSetting::Mode::fixed
                                  ? dts.value
                                  : std::numeric_limits<double>::infinity();
            std::map<int, mwcli::TableRow> group_rows;
            for (int level : order) {
                mw::TransferConfig c = cfg;
                c.dt = (calibrate && level == 2) ? std::numeric_limits<double>::infinity()
                                                 : group_dt;
                mw::ExperimentResult res;
                try {
                    res = mw::run_experiment(d.spec, per_class, level, iterations, c, cell_seed,
                                             g.threads);
                } catch (const mw::InvalidArgument& e) {
                    std::fprintf(stderr, "warning: skipping %s per_class=%d noise=%d: %s\n",
                                 d.name.c_str(), per_class, level, e.what());
                    continue;
                }
                if (calibrate && level == 2) group_dt = res.mean_distance;

                mwcli::TableRow row;
                row.dataset = d.name;
                row.per_class = per_class;
                row.noise_level = level;
                row.sigma = mw::noise_sigma(level);
                row.mean_acc_no_tl = res.without_tl.mean_accuracy;
                row.mean_acc_tl = res.with_tl.mean_accuracy;
                row.measured_distance = res.mean_distance;
                row.gated_fraction = res.gated_fraction;
                row.iterations = iterations;
                row.seed = cell_seed;
                group_rows[level] = row;
            }
            for (auto& [level, row] : group_rows) rows.push_back(std::move(row));
        }
    }

    const std::string out = g.out.empty() ? "tables.csv" : g.out;
    mwcli::write_tables_csv(rows, out);
    const std::string md = markdown_path(out);
    mwcli::write_tables_markdown(rows, md);
    std::printf("wrote %s and %s (%zu rows)\n", out.c_str(), md.c_str(), rows.size());
    return 0;
}

// ---------------------------------------------------------------- superpixel

struct SuperpixelOptions {
    std::string input;
    int n = 100;
    std::string dump_palette;
    std::string dump_segments;
};

int cmd_superpixel(const GlobalOptions& g, const SuperpixelOptions& o) {
    const mw::RasterImage img = mw::load_image(o.input);
    const std::uint64_t seed = mw::derive_seed(g.seed, 1);
    const mw::RasterImage result = mw::superpixel_centroid_image(img, o.n, seed);

    std::string out = g.out;
    if (out.empty()) {
        fs::path p(o.input);
        p.replace_filename(p.stem().string() + "_sp" + std::to_string(o.n) + ".png");
        out = p.string();
    }
    mw::save_image(result, out);

    if (!o.dump_palette.empty())
        mw::save_palette_text(mw::kmeans_palette(mw::rgb_to_lab(img), o.n, seed), o.dump_palette);
    if (!o.dump_segments.empty())
        mw::save_segments_text(mw::grid_superpixels(img.width, img.height, o.n), o.dump_segments);

    std::printf("wrote %s\n", out.c_str());
    return 0;
}

// ---------------------------------------------------------- superpixel-study

struct StudyOptions {
    std::string input_a, input_b;
    std::vector<int> grids = {10, 20, 30};
    int max_dim = 48;
    bool no_xy = false;
};

int cmd_superpixel_study(const GlobalOptions& g, const StudyOptions& o) {
    mw::RasterImage a = mw::load_image(o.input_a);
    mw::RasterImage b = mw::load_image(o.input_b);
    const int tw = std::min({a.width, b.width, o.max_dim});
    const int th = std::min({a.height, b.height, o.max_dim});
    a = mw::resize(a, tw, th);
    b = mw::resize(b, tw, th);

    const int k = g.k > 0 ? g.k : 8;
    const mw::Variant variant = mw::parse_variant(g.variant);
    auto distance = [&](const mw::RasterImage& x, const mw::RasterImage& y) {
        const mw::AdjacencyMatrix a1 =
            mw::adjacency(mw::knn_graph(mw::image_to_point_cloud(x, !o.no_xy), k, g.symmetrize));
        const mw::AdjacencyMatrix a2 =
            mw::adjacency(mw::knn_graph(mw::image_to_point_cloud(y, !o.no_xy), k, g.symmetrize));
        const double t = g.t_set ? g.t : mw::max_stable_t(a1, a2, 0.9);
        return mw::manifold_distance(a1, a2, t, variant).distance;
    };

    std::vector<mwcli::StudyRow> rows;
    rows.push_back({"original", 0, distance(a, b)});
    for (int grid : o.grids) {
        if (grid < 1) throw mw::InvalidArgument("--grids entries must be >= 1");
        const int count = grid * grid;
        const std::uint64_t sp_seed = mw::derive_seed(g.seed, grid);
        const mw::RasterImage sa = mw::superpixel_centroid_image(a, count, sp_seed);
        const mw::RasterImage sb = mw::superpixel_centroid_image(b, count, sp_seed);
        rows.push_back({std::to_string(grid), count, distance(sa, sb)});
    }

    const std::string out = g.out.empty() ? "study.csv" : g.out;
    mwcli::write_study_csv(rows, out);
    std::printf("wrote %s (%zu rows)\n", out.c_str(), rows.size());
    return 0;
}

// ---------------------------------------------------------------------- rank

struct RankOptions {
    std::string reference;
    std::string gallery;
    int superpixel = 0;
    int max_dim = 48;
    bool no_xy = false;
    bool class_averages = false;
};

int cmd_rank(const GlobalOptions& g, const RankOptions& o) {
    mw::RasterImage ref = mw::load_image(o.reference);
    const int rw = std::min(ref.width, o.max_dim);
    const int rh = std::min(ref.height, o.max_dim);
    ref = mw::resize(ref, rw, rh);
    if (o.superpixel > 0)
        ref = mw::superpixel_centroid_image(ref, o.superpixel, mw::derive_seed(g.seed, 1));

    if (!fs::is_directory(o.gallery))
        throw mw::InvalidArgument("gallery is not a directory: " + o.gallery);
    std::vector<std::string> paths;
    for (const auto& entry : fs::recursive_directory_iterator(o.gallery))
        if (entry.is_regular_file() && is_image_path(entry.path().string()))
            paths.push_back(entry.path().string());
    std::sort(paths.begin(), paths.end());
    if (paths.empty()) throw mw::InvalidArgument("empty gallery: no .png or .ppm under " + o.gallery);

    const int k = g.k > 0 ? g.k : 8;
    const mw::Variant variant = mw::parse_variant(g.variant);
    const mw::AdjacencyMatrix a_ref =
        mw::adjacency(mw::knn_graph(mw::image_to_point_cloud(ref, !o.no_xy), k, g.symmetrize));

    double t_cached = -1.0;
    mw::WalkMatrix w_ref;
    std::vector<mwcli::RankRow> rows;
    for (std::size_t idx = 0; idx < paths.size(); ++idx) {
        mw::RasterImage img = mw::load_image(paths[idx]);
        img = mw::resize(img, rw, rh);
        if (o.superpixel > 0)
            img = mw::superpixel_centroid_image(img, o.superpixel, mw::derive_seed(g.seed, 1));
        const mw::AdjacencyMatrix a =
            mw::adjacency(mw::knn_graph(mw::image_to_point_cloud(img, !o.no_xy), k, g.symmetrize));
        const double t = g.t_set ? g.t : mw::max_stable_t(a_ref, a, 0.9);
        if (t != t_cached) {
            w_ref = mw::walk_matrix(a_ref, t);
            t_cached = t;
        }
        rows.push_back({paths[idx], walk_diff(w_ref, mw::walk_matrix(a, t), variant)});
    }

    std::stable_sort(rows.begin(), rows.end(), [](const auto& x, const auto& y) {
        if (x.distance != y.distance) return x.distance < y.distance;
        return x.path < y.path;
    });

    if (o.class_averages) {
        // class = first path component under the gallery root
        std::map<std::string, std::pair<double, int>> groups;
        for (const auto& r : rows) {
            const fs::path rel = fs::relative(r.path, o.gallery);
            const std::string cls =
                std::distance(rel.begin(), rel.end()) > 1 ? rel.begin()->string() : ".";
            auto& [sum, count] = groups[cls];
            sum += r.distance;
            ++count;
        }
        std::vector<std::pair<std::string, std::pair<double, int>>> avg(groups.begin(),
                                                                        groups.end());
        std::sort(avg.begin(), avg.end(), [](const auto& x, const auto& y) {
            const double mx = x.second.first / x.second.second;
            const double my = y.second.first / y.second.second;
            if (mx != my) return mx < my;
            return x.first < y.first;
        });
        std::string text = "class,mean_distance,count\n";
        for (const auto& [cls, sc] : avg)
            text += cls + "," + mwcli::format_distance(sc.first / sc.second) + "," +
                    std::to_string(sc.second) + "\n";
        std::fputs(text.c_str(), stdout);
        if (!g.out.empty()) {
            std::ofstream f(g.out, std::ios::binary);
            if (!f) throw mw::IoError("cannot open " + g.out + " for writing");
            f << text;
        }
        return 0;
    }

    mwcli::write_rank_rows(rows, std::cout);
    if (!g.out.empty()) mwcli::write_rank_csv(rows, g.out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    GlobalOptions g;
    g.threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    if (const char* env = std::getenv("MANIFOLDWALK_DATA_DIR"); env && *env) g.data_dir = env;

    CLI::App app{"manifold similarity and graph-transfer toolkit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "manifoldwalk 0.1.0");
    app.set_config("--config", "", "key=value config file; command-line flags win");

    app.add_option("--seed", g.seed, "master RNG seed")->capture_default_str();
    app.add_option("--threads", g.threads, "worker threads")->capture_default_str();
    app.add_option("--k", g.k, "neighbor count; 0 picks the command default (10 tabular, 8 image)")
        ->capture_default_str();
    auto* t_opt = app.add_option("--t", g.t, "walk parameter; default auto = 0.9 / spectral radius");
    app.add_option("--dt", g.dt,
                   "transfer gate threshold: number, 'inf' (never gate), or 'auto' "
                   "(calibrate on the noise-2 condition per dataset group)")
        ->capture_default_str();
    app.add_option("--variant", g.variant, "node view: rows, columns, or both")
        ->check(CLI::IsMember({"rows", "columns", "both"}))
        ->capture_default_str();
    app.add_flag("--symmetrize", g.symmetrize, "undirected k-NN graphs");
    app.add_flag("--quick", g.quick, "small fast mode: n=300, 5 iterations/seeds");
    app.add_option("--out", g.out, "output path (default depends on the command)");
    app.add_option("--data-dir", g.data_dir,
                   "directory holding data_banknote_authentication.txt, pendigits.tra, sat.trn "
                   "(default: env MANIFOLDWALK_DATA_DIR)");

    SimilarityOptions so;
    auto* sim = app.add_subcommand(
        "similarity",
        "distance between two datasets or images; prints key=value lines "
        "(distance, t, n, variant). Inputs: file paths, or generators "
        "swiss[:n[:classes]], moons[:n], scurve[:n[:classes]]");
    sim->fallthrough();
    sim->add_option("input_a", so.input_a)->required();
    sim->add_option("input_b", so.input_b)->required();
    sim->add_option("--noise-a", so.noise_a, "noise level 0-4 added to input A")
        ->capture_default_str();
    sim->add_option("--noise-b", so.noise_b, "noise level 0-4 added to input B")
        ->capture_default_str();
    sim->add_option("--label-col", so.label_col, "label column name or 0-based index for tabular "
                                                 "files; negative counts from the end")
        ->capture_default_str();
    sim->add_option("--max-dim", so.max_dim, "cap image side length before comparison")
        ->capture_default_str();
    sim->add_option("--superpixel", so.superpixel,
                    "replace each image by its N-superpixel centroid image first");
    sim->add_flag("--no-xy", so.no_xy, "drop pixel coordinates from image features");
    sim->add_flag("--normalized", so.normalized,
                  "also print 1/(1+distance/n), a bounded convenience score");
    sim->add_option("--dump-adjacency", so.dump_adjacency,
                    "write both adjacency matrices to PREFIX.a.txt / PREFIX.b.txt");

    auto* fig = app.add_subcommand(
        "figure1",
        "noise sweep on the Swiss roll: walk distance plus five baseline measures, "
        "20 seeds. CSV schema: noise_level,sigma,measure,mean_distance,std_distance");
    fig->fallthrough();

    TablesOptions to;
    auto* tab = app.add_subcommand(
        "tables",
        "accuracy grid over datasets x labels-per-class x noise with and without "
        "transfer; writes CSV and a Markdown twin. CSV schema: dataset,per_class,"
        "noise_level,sigma,mean_acc_no_tl,mean_acc_tl,measured_distance,"
        "gated_fraction,iterations,seed");
    tab->fallthrough();
    tab->add_option("--per-class", to.per_class, "labels kept per class")
        ->delimiter(',')
        ->capture_default_str();
    tab->add_option("--noise", to.noise, "noise levels to sweep")
        ->delimiter(',')
        ->capture_default_str();
    auto* iters_opt =
        tab->add_option("--iterations", to.iterations, "iterations per cell")->capture_default_str();
    auto* n_opt = tab->add_option("--n", to.n, "points per dataset draw")->capture_default_str();
    tab->add_option("--classes", to.classes, "class count for swiss/scurve generators")
        ->capture_default_str();
    tab->add_option("--datasets", to.datasets,
                    "subset of swiss,moons,scurve,banknotes,pendigits,satlog "
                    "(default: synthetic trio, plus real files when a data dir is set)")
        ->delimiter(',');

    SuperpixelOptions po;
    auto* sp = app.add_subcommand("superpixel",
                                  "write the superpixel-centroid version of an image");
    sp->fallthrough();
    sp->add_option("input", po.input)->required();
    sp->add_option("--n", po.n, "superpixel count")->capture_default_str();
    sp->add_option("--dump-palette", po.dump_palette, "write palette LAB rows to this path");
    sp->add_option("--dump-segments", po.dump_segments, "write the segment grid to this path");

    StudyOptions sto;
    auto* study = app.add_subcommand(
        "superpixel-study",
        "distance between two images at full resolution and after superpixel "
        "reduction at several grid scales. CSV schema: grid_size,n_superpixels,distance");
    study->fallthrough();
    study->add_option("image_a", sto.input_a)->required();
    study->add_option("image_b", sto.input_b)->required();
    study->add_option("--grids", sto.grids, "grid side lengths; superpixel count is the square")
        ->delimiter(',')
        ->capture_default_str();
    study->add_option("--max-dim", sto.max_dim, "cap image side length")->capture_default_str();
    study->add_flag("--no-xy", sto.no_xy, "drop pixel coordinates from image features");

    RankOptions ro;
    auto* rank = app.add_subcommand(
        "rank",
        "rank gallery images by walk distance to a reference image, ascending. "
        "CSV schema: path,distance (or class,mean_distance,count with --class-averages)");
    rank->fallthrough();
    rank->add_option("reference", ro.reference)->required();
    rank->add_option("gallery", ro.gallery)->required();
    rank->add_option("--superpixel", ro.superpixel,
                     "preprocess every image to its N-superpixel centroid image");
    rank->add_option("--max-dim", ro.max_dim, "cap image side length")->capture_default_str();
    rank->add_flag("--no-xy", ro.no_xy, "drop pixel coordinates from image features");
    rank->add_flag("--class-averages", ro.class_averages,
                   "average distances per first-level gallery subdirectory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    g.t_set = t_opt->count() > 0;
    to.iterations_set = iters_opt->count() > 0;
    to.n_set = n_opt->count() > 0;

    try {
        if (*sim) return cmd_similarity(g, so);
        if (*fig) return cmd_figure1(g);
        if (*tab) return cmd_tables(g, to);
        if (*sp) return cmd_superpixel(g, po);
        if (*study) return cmd_superpixel_study(g, sto);
        if (*rank) return cmd_rank(g, ro);
    } catch (const mw::NumericalError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const mw::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
    return 0;
}
