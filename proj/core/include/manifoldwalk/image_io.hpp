#pragma once

#include <string>

#include "manifoldwalk/imaging.hpp"

namespace mw {

// Format by extension: .png, .ppm (case-insensitive). PNG alpha is dropped,
// palette and grayscale are expanded; PPM is binary P6 with maxval 255.
RasterImage load_image(const std::string& path);
void save_image(const RasterImage& img, const std::string& path);

RasterImage load_png(const std::string& path);
void save_png(const RasterImage& img, const std::string& path);
RasterImage load_ppm(const std::string& path);
void save_ppm(const RasterImage& img, const std::string& path);

// Debug text dumps, one row per line, space separated, LF endings.
void save_matrix_text(const Eigen::MatrixXd& m, const std::string& path);
void save_segments_text(const SegmentMap& seg, const std::string& path);
void save_palette_text(const Palette& palette, const std::string& path);  // L a b per line

}  // namespace mw
