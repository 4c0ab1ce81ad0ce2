#include "manifoldwalk/imaging.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "manifoldwalk/rng.hpp"

namespace mw {
namespace {

void require_valid(const RasterImage& img, const char* where) {
    if (img.width < 1 || img.height < 1)
        throw InvalidArgument(std::string(where) + ": empty image");
    if (img.pixels.size() != static_cast<std::size_t>(img.width) *
                                 static_cast<std::size_t>(img.height) * 3)
        throw InvalidArgument(std::string(where) + ": pixel buffer size mismatch");
}

void require_valid(const LabImage& img, const char* where) {
    if (img.width < 1 || img.height < 1)
        throw InvalidArgument(std::string(where) + ": empty image");
    if (img.values.size() != static_cast<std::size_t>(img.width) *
                                 static_cast<std::size_t>(img.height) * 3)
        throw InvalidArgument(std::string(where) + ": value buffer size mismatch");
}

// sRGB D65, 2-degree observer
constexpr double kWhiteX = 0.95047;
constexpr double kWhiteY = 1.0;
constexpr double kWhiteZ = 1.08883;

double srgb_linearize(double c) {
    return c <= 0.04045 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4);
}

double srgb_delinearize(double c) {
    return c <= 0.0031308 ? 12.92 * c : 1.055 * std::pow(c, 1.0 / 2.4) - 0.055;
}

double lab_f(double t) {
    constexpr double cusp = (6.0 / 29.0) * (6.0 / 29.0) * (6.0 / 29.0);
    constexpr double slope = (29.0 / 6.0) * (29.0 / 6.0) / 3.0;
    return t > cusp ? std::cbrt(t) : slope * t + 4.0 / 29.0;
}

double lab_f_inv(double t) {
    constexpr double cusp = 6.0 / 29.0;
    constexpr double slope = 3.0 * (6.0 / 29.0) * (6.0 / 29.0);
    return t > cusp ? t * t * t : slope * (t - 4.0 / 29.0);
}

void rgb_to_lab_one(double r8, double g8, double b8, double* lab) {
    const double r = srgb_linearize(r8 / 255.0);
    const double g = srgb_linearize(g8 / 255.0);
    const double b = srgb_linearize(b8 / 255.0);
    const double x = 0.4124564 * r + 0.3575761 * g + 0.1804375 * b;
    const double y = 0.2126729 * r + 0.7151522 * g + 0.0721750 * b;
    const double z = 0.0193339 * r + 0.1191920 * g + 0.9503041 * b;
    const double fx = lab_f(x / kWhiteX);
    const double fy = lab_f(y / kWhiteY);
    const double fz = lab_f(z / kWhiteZ);
    lab[0] = 116.0 * fy - 16.0;
    lab[1] = 500.0 * (fx - fy);
    lab[2] = 200.0 * (fy - fz);
}

std::uint8_t to_byte(double c01) {
    const double v = std::clamp(c01, 0.0, 1.0) * 255.0;
    return static_cast<std::uint8_t>(std::lround(v));
}

void lab_to_rgb_one(const double* lab, std::uint8_t* rgb) {
    const double fy = (lab[0] + 16.0) / 116.0;
    const double fx = fy + lab[1] / 500.0;
    const double fz = fy - lab[2] / 200.0;
    const double x = kWhiteX * lab_f_inv(fx);
    const double y = kWhiteY * lab_f_inv(fy);
    const double z = kWhiteZ * lab_f_inv(fz);
    const double r = 3.2404542 * x - 1.5371385 * y - 0.4985314 * z;
    const double g = -0.9692660 * x + 1.8760108 * y + 0.0415560 * z;
    const double b = 0.0556434 * x - 0.2040259 * y + 1.0572252 * z;
    rgb[0] = to_byte(srgb_delinearize(std::clamp(r, 0.0, 1.0)));
    rgb[1] = to_byte(srgb_delinearize(std::clamp(g, 0.0, 1.0)));
    rgb[2] = to_byte(srgb_delinearize(std::clamp(b, 0.0, 1.0)));
}

}  // namespace

LabImage rgb_to_lab(const RasterImage& img) {
    require_valid(img, "rgb_to_lab");
    LabImage out;
    out.width = img.width;
    out.height = img.height;
    out.values.resize(img.pixels.size());
    for (std::size_t p = 0; p < img.pixels.size(); p += 3)
        rgb_to_lab_one(img.pixels[p], img.pixels[p + 1], img.pixels[p + 2], &out.values[p]);
    return out;
}

RasterImage lab_to_rgb(const LabImage& img) {
    require_valid(img, "lab_to_rgb");
    RasterImage out;
    out.width = img.width;
    out.height = img.height;
    out.pixels.resize(img.values.size());
    for (std::size_t p = 0; p < img.values.size(); p += 3)
        lab_to_rgb_one(&img.values[p], &out.pixels[p]);
    return out;
}

SegmentMap grid_superpixels(int width, int height, int n) {
    if (width < 1 || height < 1) throw InvalidArgument("grid_superpixels: empty image");
    if (n < 1) throw InvalidArgument("grid_superpixels: n must be >= 1");

    const double target = std::sqrt(static_cast<double>(width) *
                                    static_cast<double>(height) / static_cast<double>(n));
    const int step = std::max(1, static_cast<int>(std::lround(target)));
    const int blocks_x = (width + step - 1) / step;
    const int blocks_y = (height + step - 1) / step;

    SegmentMap seg;
    seg.width = width;
    seg.height = height;
    seg.segment_count = blocks_x * blocks_y;
    seg.labels.resize(static_cast<std::size_t>(width) * static_cast<std::size_t>(height));
    for (int y = 0; y < height; ++y)
        for (int x = 0; x < width; ++x)
            seg.labels[static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
                       static_cast<std::size_t>(x)] = (y / step) * blocks_x + (x / step);
    return seg;
}

Palette kmeans_palette(const LabImage& img, int n, std::uint64_t seed) {
    require_valid(img, "kmeans_palette");
    const std::size_t count = img.values.size() / 3;
    if (n < 1) throw InvalidArgument("kmeans_palette: n must be >= 1");
    if (static_cast<std::size_t>(n) > count)
        throw InvalidArgument("kmeans_palette: n=" + std::to_string(n) + " exceeds pixel count " +
                              std::to_string(count));

    auto point = [&](std::size_t i) -> const double* { return &img.values[i * 3]; };
    auto sqdist = [](const double* a, const double* b) {
        const double d0 = a[0] - b[0], d1 = a[1] - b[1], d2 = a[2] - b[2];
        return d0 * d0 + d1 * d1 + d2 * d2;
    };

    Rng rng(seed);
    std::vector<std::array<double, 3>> centers;
    centers.reserve(static_cast<std::size_t>(n));

    // k-means++ seeding
    {
        const std::size_t first = static_cast<std::size_t>(rng.below(count));
        centers.push_back({point(first)[0], point(first)[1], point(first)[2]});
        std::vector<double> best(count);
        for (std::size_t i = 0; i < count; ++i) best[i] = sqdist(point(i), centers[0].data());
        while (centers.size() < static_cast<std::size_t>(n)) {
            double total = 0.0;
            for (double d : best) total += d;
            std::size_t pick;
            if (total <= 0.0) {
                pick = static_cast<std::size_t>(rng.below(count));
            } else {
                const double r = rng.uniform() * total;
                double acc = 0.0;
                pick = count - 1;
                for (std::size_t i = 0; i < count; ++i) {
                    acc += best[i];
                    if (acc >= r) {
                        pick = i;
                        break;
                    }
                }
            }
            centers.push_back({point(pick)[0], point(pick)[1], point(pick)[2]});
            for (std::size_t i = 0; i < count; ++i)
                best[i] = std::min(best[i], sqdist(point(i), centers.back().data()));
        }
    }

    std::vector<int> assign(count, 0);
    for (int iter = 0; iter < 100; ++iter) {
        for (std::size_t i = 0; i < count; ++i) {
            int arg = 0;
            double bd = sqdist(point(i), centers[0].data());
            for (std::size_t c = 1; c < centers.size(); ++c) {
                const double d = sqdist(point(i), centers[c].data());
                if (d < bd) {
                    bd = d;
                    arg = static_cast<int>(c);
                }
            }
            assign[i] = arg;
        }

        std::vector<std::array<double, 3>> sums(centers.size(), {0.0, 0.0, 0.0});
        std::vector<std::size_t> sizes(centers.size(), 0);
        for (std::size_t i = 0; i < count; ++i) {
            const double* p = point(i);
            auto& s = sums[static_cast<std::size_t>(assign[i])];
            s[0] += p[0];
            s[1] += p[1];
            s[2] += p[2];
            ++sizes[static_cast<std::size_t>(assign[i])];
        }

        double shift = 0.0;
        for (std::size_t c = 0; c < centers.size(); ++c) {
            std::array<double, 3> updated;
            if (sizes[c] == 0) {
                // restart at the point farthest from its current centroid
                std::size_t far = 0;
                double fd = -1.0;
                for (std::size_t i = 0; i < count; ++i) {
                    const double d =
                        sqdist(point(i), centers[static_cast<std::size_t>(assign[i])].data());
                    if (d > fd) {
                        fd = d;
                        far = i;
                    }
                }
                updated = {point(far)[0], point(far)[1], point(far)[2]};
            } else {
                const double m = static_cast<double>(sizes[c]);
                updated = {sums[c][0] / m, sums[c][1] / m, sums[c][2] / m};
            }
            shift = std::max(shift, std::sqrt(sqdist(updated.data(), centers[c].data())));
            centers[c] = updated;
        }
        if (shift <= 1e-4) break;
    }

    Palette out;
    out.colors = std::move(centers);
    return out;
}

RasterImage superpixel_centroid_image(const RasterImage& img, int n, std::uint64_t seed) {
    require_valid(img, "superpixel_centroid_image");
    const LabImage lab = rgb_to_lab(img);
    const Palette palette = kmeans_palette(lab, n, seed);
    const SegmentMap seg = grid_superpixels(img.width, img.height, n);

    std::vector<std::array<double, 3>> sums(static_cast<std::size_t>(seg.segment_count),
                                            {0.0, 0.0, 0.0});
    std::vector<std::size_t> sizes(static_cast<std::size_t>(seg.segment_count), 0);
    for (std::size_t i = 0; i < seg.labels.size(); ++i) {
        const auto s = static_cast<std::size_t>(seg.labels[i]);
        sums[s][0] += lab.values[i * 3];
        sums[s][1] += lab.values[i * 3 + 1];
        sums[s][2] += lab.values[i * 3 + 2];
        ++sizes[s];
    }

    std::vector<int> chosen(static_cast<std::size_t>(seg.segment_count), 0);
    for (std::size_t s = 0; s < sums.size(); ++s) {
        if (sizes[s] == 0) continue;
        const double m = static_cast<double>(sizes[s]);
        const std::array<double, 3> mean = {sums[s][0] / m, sums[s][1] / m, sums[s][2] / m};
        int arg = 0;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < palette.colors.size(); ++c) {
            const double d0 = mean[0] - palette.colors[c][0];
            const double d1 = mean[1] - palette.colors[c][1];
            const double d2 = mean[2] - palette.colors[c][2];
            const double d = d0 * d0 + d1 * d1 + d2 * d2;
            if (d < best) {  // strict: ties keep the lower palette index
                best = d;
                arg = static_cast<int>(c);
            }
        }
        chosen[s] = arg;
    }

    LabImage painted;
    painted.width = img.width;
    painted.height = img.height;
    painted.values.resize(lab.values.size());
    for (std::size_t i = 0; i < seg.labels.size(); ++i) {
        const auto& color = palette.colors[static_cast<std::size_t>(
            chosen[static_cast<std::size_t>(seg.labels[i])])];
        painted.values[i * 3] = color[0];
        painted.values[i * 3 + 1] = color[1];
        painted.values[i * 3 + 2] = color[2];
    }
    return lab_to_rgb(painted);
}

PointCloud image_to_point_cloud(const RasterImage& img, bool include_xy) {
    require_valid(img, "image_to_point_cloud");
    const LabImage lab = rgb_to_lab(img);
    const Eigen::Index n =
        static_cast<Eigen::Index>(img.width) * static_cast<Eigen::Index>(img.height);
    PointCloud out;
    out.features.resize(n, include_xy ? 5 : 3);
    Eigen::Index row = 0;
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x, ++row) {
            const std::size_t p = lab.offset(x, y);
            Eigen::Index col = 0;
            if (include_xy) {
                out.features(row, col++) = static_cast<double>(x) / img.width;
                out.features(row, col++) = static_cast<double>(y) / img.height;
            }
            out.features(row, col++) = lab.values[p] / 100.0;
            out.features(row, col++) = (lab.values[p + 1] + 128.0) / 255.0;
            out.features(row, col++) = (lab.values[p + 2] + 128.0) / 255.0;
        }
    return out;
}

RasterImage resize(const RasterImage& img, int width, int height) {
    require_valid(img, "resize");
    if (width < 1 || height < 1) throw InvalidArgument("resize: target dims must be >= 1");

    RasterImage out;
    out.width = width;
    out.height = height;
    out.pixels.resize(static_cast<std::size_t>(width) * static_cast<std::size_t>(height) * 3);

    const double sx = static_cast<double>(img.width) / width;
    const double sy = static_cast<double>(img.height) / height;
    for (int y = 0; y < height; ++y) {
        const double src_y = std::clamp((y + 0.5) * sy - 0.5, 0.0, img.height - 1.0);
        const int y0 = static_cast<int>(src_y);
        const int y1 = std::min(y0 + 1, img.height - 1);
        const double fy = src_y - y0;
        for (int x = 0; x < width; ++x) {
            const double src_x = std::clamp((x + 0.5) * sx - 0.5, 0.0, img.width - 1.0);
            const int x0 = static_cast<int>(src_x);
            const int x1 = std::min(x0 + 1, img.width - 1);
            const double fx = src_x - x0;
            for (int ch = 0; ch < 3; ++ch) {
                const double v00 = img.pixels[img.offset(x0, y0) + static_cast<std::size_t>(ch)];
                const double v10 = img.pixels[img.offset(x1, y0) + static_cast<std::size_t>(ch)];
                const double v01 = img.pixels[img.offset(x0, y1) + static_cast<std::size_t>(ch)];
                const double v11 = img.pixels[img.offset(x1, y1) + static_cast<std::size_t>(ch)];
                const double top = v00 + (v10 - v00) * fx;
                const double bottom = v01 + (v11 - v01) * fx;
                out.pixels[out.offset(x, y) + static_cast<std::size_t>(ch)] =
                    static_cast<std::uint8_t>(std::lround(top + (bottom - top) * fy));
            }
        }
    }
    return out;
}

}  // namespace mw
