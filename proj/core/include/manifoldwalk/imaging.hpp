#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "manifoldwalk/point_cloud.hpp"

namespace mw {

// 8-bit sRGB, row-major, 3 bytes per pixel. Pixel (x, y) starts at
// (y*width + x)*3.
struct RasterImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;

    std::size_t offset(int x, int y) const {
        return (static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
                static_cast<std::size_t>(x)) * 3;
    }
};

// CIELAB against D65 white, same layout with double triples (L, a, b).
struct LabImage {
    int width = 0;
    int height = 0;
    std::vector<double> values;

    std::size_t offset(int x, int y) const {
        return (static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
                static_cast<std::size_t>(x)) * 3;
    }
};

// Row-major segment label per pixel; labels cover 0..segment_count-1.
struct SegmentMap {
    int width = 0;
    int height = 0;
    int segment_count = 0;
    std::vector<int> labels;
};

struct Palette {
    std::vector<std::array<double, 3>> colors;  // LAB
};

LabImage rgb_to_lab(const RasterImage& img);
RasterImage lab_to_rgb(const LabImage& img);  // clamps to gamut

// Axis-aligned blocks of side max(1, round(sqrt(w*h/n))), labeled 0,1,... in
// row-major block order.
SegmentMap grid_superpixels(int width, int height, int n);

// k-means over all pixel LAB triples: k-means++ start, Lloyd iterations
// capped at 100, stop when no centroid moves more than 1e-4; an emptied
// cluster restarts at the point farthest from its assigned centroid.
Palette kmeans_palette(const LabImage& img, int n, std::uint64_t seed);

// Each grid segment painted with the palette color nearest its mean LAB
// (ties to the lower palette index), then converted back to sRGB.
RasterImage superpixel_centroid_image(const RasterImage& img, int n, std::uint64_t seed);

// One row per pixel in raster order. Features (L/100, (a+128)/255,
// (b+128)/255), prepended with (x/width, y/height) when include_xy is set.
// Raster order keeps nodes of equal-size images aligned.
PointCloud image_to_point_cloud(const RasterImage& img, bool include_xy);

// Bilinear resampling with center-aligned coordinates.
RasterImage resize(const RasterImage& img, int width, int height);

}  // namespace mw
