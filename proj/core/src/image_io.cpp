#include "manifoldwalk/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <memory>

namespace mw {
namespace {

std::string lower_ext(const std::string& path) {
    const std::size_t dot = path.rfind('.');
    if (dot == std::string::npos) return "";
    std::string ext = path.substr(dot + 1);
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return ext;
}

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

}  // namespace

RasterImage load_image(const std::string& path) {
    const std::string ext = lower_ext(path);
    if (ext == "png") return load_png(path);
    if (ext == "ppm") return load_ppm(path);
    throw InvalidArgument("load_image: unsupported extension '" + ext + "' for " + path +
                          " (expected .png or .ppm)");
}

void save_image(const RasterImage& img, const std::string& path) {
    const std::string ext = lower_ext(path);
    if (ext == "png") return save_png(img, path);
    if (ext == "ppm") return save_ppm(img, path);
    throw InvalidArgument("save_image: unsupported extension '" + ext + "' for " + path +
                          " (expected .png or .ppm)");
}

RasterImage load_png(const std::string& path) {
    FilePtr file(std::fopen(path.c_str(), "rb"));
    if (!file) throw IoError("load_png: cannot open " + path);

    png_byte header[8];
    if (std::fread(header, 1, 8, file.get()) != 8 || png_sig_cmp(header, 0, 8) != 0)
        throw ParseError("load_png: " + path + " is not a PNG file");

    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw IoError("load_png: png_create_read_struct failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        throw IoError("load_png: png_create_info_struct failed");
    }

    RasterImage img;
    std::vector<png_bytep> row_ptrs;
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw ParseError("load_png: failed to decode " + path);
    }

    png_init_io(png, file.get());
    png_set_sig_bytes(png, 8);
    png_read_info(png, info);

    const png_uint_32 w = png_get_image_width(png, info);
    const png_uint_32 h = png_get_image_height(png, info);
    const png_byte color = png_get_color_type(png, info);
    const png_byte depth = png_get_bit_depth(png, info);

    if (depth == 16) png_set_strip_16(png);
    if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (color == PNG_COLOR_TYPE_GRAY && depth < 8) png_set_expand_gray_1_2_4_to_8(png);
    if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
    if (color == PNG_COLOR_TYPE_GRAY || color == PNG_COLOR_TYPE_GRAY_ALPHA)
        png_set_gray_to_rgb(png);
    png_set_strip_alpha(png);
    png_read_update_info(png, info);

    img.width = static_cast<int>(w);
    img.height = static_cast<int>(h);
    img.pixels.resize(static_cast<std::size_t>(w) * h * 3);
    row_ptrs.resize(h);
    for (png_uint_32 y = 0; y < h; ++y)
        row_ptrs[y] = img.pixels.data() + static_cast<std::size_t>(y) * w * 3;
    png_read_image(png, row_ptrs.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);
    return img;
}

void save_png(const RasterImage& img, const std::string& path) {
    if (img.width < 1 || img.height < 1 ||
        img.pixels.size() != static_cast<std::size_t>(img.width) *
                                 static_cast<std::size_t>(img.height) * 3)
        throw InvalidArgument("save_png: malformed image");

    FilePtr file(std::fopen(path.c_str(), "wb"));
    if (!file) throw IoError("save_png: cannot open " + path + " for writing");

    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw IoError("save_png: png_create_write_struct failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        throw IoError("save_png: png_create_info_struct failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw IoError("save_png: failed to encode " + path);
    }

    png_init_io(png, file.get());
    png_set_IHDR(png, info, static_cast<png_uint_32>(img.width),
                 static_cast<png_uint_32>(img.height), 8, PNG_COLOR_TYPE_RGB,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    for (int y = 0; y < img.height; ++y)
        png_write_row(png, const_cast<png_bytep>(img.pixels.data() +
                                                 static_cast<std::size_t>(y) * img.width * 3));
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}

namespace {

// Reads one PPM header token, skipping whitespace and # comments.
std::string ppm_token(std::istream& in, const std::string& path) {
    std::string tok;
    int c;
    while ((c = in.get()) != EOF) {
        if (c == '#') {
            while ((c = in.get()) != EOF && c != '\n') {
            }
            continue;
        }
        if (std::isspace(c)) {
            if (!tok.empty()) return tok;
            continue;
        }
        tok.push_back(static_cast<char>(c));
    }
    if (tok.empty()) throw ParseError("load_ppm: " + path + ": truncated header");
    return tok;
}

}  // namespace

RasterImage load_ppm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("load_ppm: cannot open " + path);

    if (ppm_token(in, path) != "P6")
        throw ParseError("load_ppm: " + path + ": not a binary P6 file");
    const std::string ws = ppm_token(in, path);
    const std::string hs = ppm_token(in, path);
    const std::string ms = ppm_token(in, path);
    int w, h, maxval;
    try {
        w = std::stoi(ws);
        h = std::stoi(hs);
        maxval = std::stoi(ms);
    } catch (const std::exception&) {
        throw ParseError("load_ppm: " + path + ": malformed header");
    }
    if (w < 1 || h < 1) throw ParseError("load_ppm: " + path + ": bad dimensions");
    if (maxval != 255)
        throw ParseError("load_ppm: " + path + ": unsupported maxval " + std::to_string(maxval));

    RasterImage img;
    img.width = w;
    img.height = h;
    img.pixels.resize(static_cast<std::size_t>(w) * static_cast<std::size_t>(h) * 3);
    in.read(reinterpret_cast<char*>(img.pixels.data()),
            static_cast<std::streamsize>(img.pixels.size()));
    if (in.gcount() != static_cast<std::streamsize>(img.pixels.size()))
        throw ParseError("load_ppm: " + path + ": truncated pixel data");
    return img;
}

void save_ppm(const RasterImage& img, const std::string& path) {
    if (img.width < 1 || img.height < 1 ||
        img.pixels.size() != static_cast<std::size_t>(img.width) *
                                 static_cast<std::size_t>(img.height) * 3)
        throw InvalidArgument("save_ppm: malformed image");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("save_ppm: cannot open " + path + " for writing");
    out << "P6\n" << img.width << " " << img.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(img.pixels.data()),
              static_cast<std::streamsize>(img.pixels.size()));
    if (!out) throw IoError("save_ppm: write failed for " + path);
}

void save_matrix_text(const Eigen::MatrixXd& m, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("save_matrix_text: cannot open " + path + " for writing");
    char buf[64];
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            std::snprintf(buf, sizeof(buf), "%g", m(i, j));
            if (j) out << ' ';
            out << buf;
        }
        out << '\n';
    }
    if (!out) throw IoError("save_matrix_text: write failed for " + path);
}

void save_segments_text(const SegmentMap& seg, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("save_segments_text: cannot open " + path + " for writing");
    for (int y = 0; y < seg.height; ++y) {
        for (int x = 0; x < seg.width; ++x) {
            if (x) out << ' ';
            out << seg.labels[static_cast<std::size_t>(y) * static_cast<std::size_t>(seg.width) +
                              static_cast<std::size_t>(x)];
        }
        out << '\n';
    }
    if (!out) throw IoError("save_segments_text: write failed for " + path);
}

void save_palette_text(const Palette& palette, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("save_palette_text: cannot open " + path + " for writing");
    char buf[128];
    for (const auto& c : palette.colors) {
        std::snprintf(buf, sizeof(buf), "%.6f %.6f %.6f\n", c[0], c[1], c[2]);
        out << buf;
    }
    if (!out) throw IoError("save_palette_text: write failed for " + path);
}

}  // namespace mw
