#include "manifoldwalk/datasets.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>

#include "manifoldwalk/rng.hpp"

namespace mw {

double noise_sigma(int level) {
    switch (level) {
        case 0: return 0.0;
        case 1: return 0.078;
        case 2: return 0.29;
        case 3: return 0.64;
        case 4: return 1.0;
    }
    throw InvalidArgument("noise_sigma: level must be in 0..4, got " + std::to_string(level));
}

NoiseSpec noise_spec(int level) { return NoiseSpec{level, noise_sigma(level)}; }

namespace {

constexpr double kPi = 3.14159265358979323846;

// Parameter values stratified over `classes` equal-width bins of [lo, hi);
// bin c receives n/classes points plus one extra when c < n mod classes.
// Per point the draw order is fixed: parameter first, then height.
LabeledPointCloud gen_curve(Eigen::Index n, int classes, std::uint64_t seed,
                            double lo, double hi, double h_max, const char* name,
                            void (*point)(double u, double h, double* out)) {
    if (classes < 2) throw InvalidArgument(std::string(name) + ": classes must be >= 2");
    if (n < classes)
        throw InvalidArgument(std::string(name) + ": n must be at least classes");

    Rng rng(seed);
    const double width = (hi - lo) / classes;
    LabeledPointCloud out;
    out.cloud.features.resize(n, 3);
    out.labels.resize(static_cast<std::size_t>(n));

    Eigen::Index row = 0;
    for (int c = 0; c < classes; ++c) {
        Eigen::Index count = n / classes + (c < static_cast<int>(n % classes) ? 1 : 0);
        const double bin_lo = lo + c * width;
        for (Eigen::Index i = 0; i < count; ++i, ++row) {
            const double u = bin_lo + width * rng.uniform();
            const double h = rng.uniform(0.0, h_max);
            double p[3];
            point(u, h, p);
            out.cloud.features(row, 0) = p[0];
            out.cloud.features(row, 1) = p[1];
            out.cloud.features(row, 2) = p[2];
            int label = static_cast<int>(std::floor(classes * (u - lo) / (hi - lo)));
            label = std::clamp(label, 0, classes - 1);
            out.labels[static_cast<std::size_t>(row)] = label;
        }
    }
    return out;
}

}  // namespace

LabeledPointCloud gen_swiss_roll(Eigen::Index n, int classes, std::uint64_t seed) {
    return gen_curve(n, classes, seed, 1.5 * kPi, 4.5 * kPi, 21.0, "gen_swiss_roll",
                     [](double u, double h, double* p) {
                         p[0] = u * std::cos(u);
                         p[1] = h;
                         p[2] = u * std::sin(u);
                     });
}

LabeledPointCloud gen_s_curve(Eigen::Index n, int classes, std::uint64_t seed) {
    return gen_curve(n, classes, seed, -1.5 * kPi, 1.5 * kPi, 2.0, "gen_s_curve",
                     [](double u, double h, double* p) {
                         p[0] = std::sin(u);
                         p[1] = h;
                         p[2] = (u >= 0.0 ? 1.0 : -1.0) * (std::cos(u) - 1.0);
                     });
}

LabeledPointCloud gen_moons(Eigen::Index n, std::uint64_t seed) {
    if (n < 2) throw InvalidArgument("gen_moons: n must be >= 2");
    Rng rng(seed);
    const Eigen::Index n0 = (n + 1) / 2;
    LabeledPointCloud out;
    out.cloud.features.resize(n, 2);
    out.labels.resize(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        const double theta = rng.uniform(0.0, kPi);
        if (i < n0) {
            out.cloud.features(i, 0) = std::cos(theta);
            out.cloud.features(i, 1) = std::sin(theta);
            out.labels[static_cast<std::size_t>(i)] = 0;
        } else {
            out.cloud.features(i, 0) = 1.0 - std::cos(theta);
            out.cloud.features(i, 1) = 0.5 - std::sin(theta);
            out.labels[static_cast<std::size_t>(i)] = 1;
        }
    }
    return out;
}

PointCloud add_noise(const PointCloud& cloud, const NoiseSpec& spec, std::uint64_t seed) {
    PointCloud out = cloud;
    if (spec.sigma == 0.0) return out;
    Rng rng(seed);
    for (Eigen::Index i = 0; i < out.features.rows(); ++i)
        for (Eigen::Index j = 0; j < out.features.cols(); ++j)
            out.features(i, j) += spec.sigma * rng.normal();
    return out;
}

PartiallyLabeledCloud mask_labels(const LabeledPointCloud& data, int per_class,
                                  std::uint64_t seed) {
    require_consistent(data, "mask_labels");
    if (per_class < 1) throw InvalidArgument("mask_labels: per_class must be >= 1");

    const int classes = class_count(data.labels);
    std::vector<std::vector<Eigen::Index>> members(static_cast<std::size_t>(classes));
    for (std::size_t i = 0; i < data.labels.size(); ++i) {
        const int l = data.labels[i];
        if (l < 0) throw InvalidArgument("mask_labels: negative label at row " + std::to_string(i));
        members[static_cast<std::size_t>(l)].push_back(static_cast<Eigen::Index>(i));
    }

    for (int c = 0; c < classes; ++c)
        if (members[static_cast<std::size_t>(c)].size() < static_cast<std::size_t>(per_class))
            throw InvalidArgument("mask_labels: class " + std::to_string(c) + " has " +
                                  std::to_string(members[static_cast<std::size_t>(c)].size()) +
                                  " members, fewer than per_class=" + std::to_string(per_class));

    PartiallyLabeledCloud out;
    out.cloud = data.cloud;
    out.labels.assign(data.labels.size(), -1);
    out.labeled.assign(data.labels.size(), false);

    Rng rng(seed);
    for (int c = 0; c < classes; ++c) {
        auto picked = rng.sample_without_replacement(members[static_cast<std::size_t>(c)],
                                                     static_cast<std::size_t>(per_class));
        for (Eigen::Index row : picked) {
            out.labels[static_cast<std::size_t>(row)] = c;
            out.labeled[static_cast<std::size_t>(row)] = true;
        }
    }
    return out;
}

PointCloud minmax_scale(const PointCloud& cloud) {
    if (cloud.size() < 1) throw InvalidArgument("minmax_scale: empty cloud");
    PointCloud out = cloud;
    for (Eigen::Index j = 0; j < out.features.cols(); ++j) {
        const double lo = out.features.col(j).minCoeff();
        const double hi = out.features.col(j).maxCoeff();
        if (hi == lo) {
            out.features.col(j).setZero();
        } else {
            out.features.col(j) = (out.features.col(j).array() - lo) / (hi - lo);
        }
    }
    return out;
}

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

bool parse_double(const std::string& cell, double& value) {
    const char* begin = cell.c_str();
    const char* end = begin + cell.size();
    if (begin != end && *begin == '+') ++begin;
    auto [ptr, ec] = std::from_chars(begin, end, value);
    return ec == std::errc{} && ptr == end && begin != end;
}

std::vector<std::string> split_cells(const std::string& line) {
    std::vector<std::string> cells;
    if (line.find(',') != std::string::npos) {
        std::size_t start = 0;
        for (;;) {
            const std::size_t comma = line.find(',', start);
            cells.push_back(trim(line.substr(start, comma - start)));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
    } else {
        std::size_t i = 0;
        while (i < line.size()) {
            while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
            std::size_t start = i;
            while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
            if (i > start) cells.push_back(line.substr(start, i - start));
        }
    }
    return cells;
}

std::string cell_location(const std::string& path, std::size_t line, std::size_t col) {
    return path + ":" + std::to_string(line) + ": column " + std::to_string(col);
}

}  // namespace

LabeledPointCloud load_csv(const std::string& path, const std::string& label_column) {
    std::ifstream in(path);
    if (!in) throw IoError("load_csv: cannot open " + path);

    // rows of (1-based file line, cells)
    std::vector<std::pair<std::size_t, std::vector<std::string>>> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        auto cells = split_cells(line);
        if (cells.empty() || (cells.size() == 1 && cells[0].empty())) continue;
        rows.emplace_back(line_no, std::move(cells));
    }
    if (rows.empty()) throw ParseError("load_csv: " + path + ": empty file");

    const std::size_t cols = rows[0].second.size();
    if (cols < 2)
        throw ParseError("load_csv: " + path + ":" + std::to_string(rows[0].first) +
                         ": need at least two columns (features plus label)");
    for (const auto& [ln, cells] : rows)
        if (cells.size() != cols)
            throw ParseError("load_csv: " + path + ":" + std::to_string(ln) + ": expected " +
                             std::to_string(cols) + " columns, found " +
                             std::to_string(cells.size()));

    // Header iff some column is non-numeric in row 0 but numeric in row 1.
    bool has_header = false;
    if (rows.size() >= 2) {
        for (std::size_t j = 0; j < cols; ++j) {
            double v;
            if (!parse_double(rows[0].second[j], v) && parse_double(rows[1].second[j], v)) {
                has_header = true;
                break;
            }
        }
    }

    // Resolve the label column: integer index (negative from the end) or name.
    std::size_t label_idx;
    {
        const std::string sel = trim(label_column);
        long long idx;
        const char* b = sel.c_str();
        auto [p, ec] = std::from_chars(b, b + sel.size(), idx);
        if (ec == std::errc{} && p == b + sel.size() && !sel.empty()) {
            if (idx < 0) idx += static_cast<long long>(cols);
            if (idx < 0 || idx >= static_cast<long long>(cols))
                throw InvalidArgument("load_csv: label column index " + sel + " out of range for " +
                                      std::to_string(cols) + " columns");
            label_idx = static_cast<std::size_t>(idx);
        } else {
            if (!has_header)
                throw InvalidArgument("load_csv: label column name '" + sel +
                                      "' given but file has no header row");
            const auto& header = rows[0].second;
            auto it = std::find(header.begin(), header.end(), sel);
            if (it == header.end())
                throw InvalidArgument("load_csv: no column named '" + sel + "' in header");
            label_idx = static_cast<std::size_t>(it - header.begin());
        }
    }

    const std::size_t first_data = has_header ? 1 : 0;
    const std::size_t n = rows.size() - first_data;
    if (n == 0) throw ParseError("load_csv: " + path + ": header but no data rows");

    LabeledPointCloud out;
    out.cloud.features.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(cols - 1));
    std::vector<std::string> raw_labels(n);

    for (std::size_t r = 0; r < n; ++r) {
        const auto& [ln, cells] = rows[first_data + r];
        Eigen::Index fj = 0;
        for (std::size_t j = 0; j < cols; ++j) {
            if (j == label_idx) {
                raw_labels[r] = cells[j];
                continue;
            }
            double v;
            if (cells[j].empty())
                throw ParseError("load_csv: " + cell_location(path, ln, j + 1) + ": empty cell");
            if (!parse_double(cells[j], v))
                throw ParseError("load_csv: " + cell_location(path, ln, j + 1) +
                                 ": non-numeric feature value '" + cells[j] + "'");
            if (!std::isfinite(v))
                throw ParseError("load_csv: " + cell_location(path, ln, j + 1) +
                                 ": non-finite feature value '" + cells[j] + "'");
            out.cloud.features(static_cast<Eigen::Index>(r), fj++) = v;
        }
    }

    // Re-encode labels to 0..C-1: numerically when every raw label parses as a
    // number, lexicographically otherwise.
    bool all_numeric = true;
    std::vector<double> numeric(n);
    for (std::size_t r = 0; r < n; ++r) {
        if (!parse_double(raw_labels[r], numeric[r])) {
            all_numeric = false;
            break;
        }
    }
    out.labels.resize(n);
    if (all_numeric) {
        std::map<double, int> ids;
        for (double v : numeric) ids.emplace(v, 0);
        int next = 0;
        for (auto& [v, id] : ids) id = next++;
        for (std::size_t r = 0; r < n; ++r) out.labels[r] = ids[numeric[r]];
    } else {
        std::map<std::string, int> ids;
        for (const auto& s : raw_labels) ids.emplace(s, 0);
        int next = 0;
        for (auto& [s, id] : ids) id = next++;
        for (std::size_t r = 0; r < n; ++r) out.labels[r] = ids[raw_labels[r]];
    }
    return out;
}

LabeledPointCloud subsample(const LabeledPointCloud& data, Eigen::Index n,
                            std::uint64_t seed) {
    require_consistent(data, "subsample");
    const Eigen::Index total = data.size();
    if (n < 1) throw InvalidArgument("subsample: n must be >= 1");
    if (n > total)
        throw InvalidArgument("subsample: n=" + std::to_string(n) + " exceeds dataset size " +
                              std::to_string(total));

    const int classes = class_count(data.labels);
    std::vector<std::vector<Eigen::Index>> members(static_cast<std::size_t>(classes));
    for (std::size_t i = 0; i < data.labels.size(); ++i)
        members[static_cast<std::size_t>(data.labels[i])].push_back(static_cast<Eigen::Index>(i));

    // Largest-remainder quotas keep class proportions within one point.
    std::vector<Eigen::Index> take(static_cast<std::size_t>(classes));
    std::vector<std::pair<Eigen::Index, int>> rema;  // (remainder numerator, class)
    Eigen::Index assigned = 0;
    for (int c = 0; c < classes; ++c) {
        const Eigen::Index m = static_cast<Eigen::Index>(members[static_cast<std::size_t>(c)].size());
        take[static_cast<std::size_t>(c)] = n * m / total;
        assigned += take[static_cast<std::size_t>(c)];
        rema.emplace_back(n * m % total, c);
    }
    std::sort(rema.begin(), rema.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
    });
    for (Eigen::Index left = n - assigned, i = 0; left > 0; --left, ++i)
        ++take[static_cast<std::size_t>(rema[static_cast<std::size_t>(i)].second)];

    Rng rng(seed);
    std::vector<Eigen::Index> chosen;
    chosen.reserve(static_cast<std::size_t>(n));
    for (int c = 0; c < classes; ++c) {
        auto picked = rng.sample_without_replacement(
            members[static_cast<std::size_t>(c)],
            static_cast<std::size_t>(take[static_cast<std::size_t>(c)]));
        chosen.insert(chosen.end(), picked.begin(), picked.end());
    }
    std::sort(chosen.begin(), chosen.end());

    LabeledPointCloud out;
    out.cloud.features.resize(n, data.cloud.dim());
    out.labels.resize(static_cast<std::size_t>(n));
    for (Eigen::Index r = 0; r < n; ++r) {
        out.cloud.features.row(r) = data.cloud.features.row(chosen[static_cast<std::size_t>(r)]);
        out.labels[static_cast<std::size_t>(r)] =
            data.labels[static_cast<std::size_t>(chosen[static_cast<std::size_t>(r)])];
    }
    return out;
}

}  // namespace mw
