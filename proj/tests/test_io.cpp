#include <doctest.h>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <string>

#include "manifoldwalk/image_io.hpp"
#include "manifoldwalk/rng.hpp"

namespace {

namespace fs = std::filesystem;

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("mw_io_test_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter()++));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    std::string file(const std::string& name) const { return (path / name).string(); }
    static int& counter() {
        static int c = 0;
        return c;
    }
};

mw::RasterImage random_image(int w, int h, std::uint64_t seed) {
    mw::Rng rng(seed);
    mw::RasterImage img;
    img.width = w;
    img.height = h;
    img.pixels.resize(static_cast<std::size_t>(w) * static_cast<std::size_t>(h) * 3);
    for (auto& p : img.pixels) p = static_cast<std::uint8_t>(rng.below(256));
    return img;
}

void write_bytes(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

std::string read_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

}  // namespace

TEST_SUITE("image_io") {

TEST_CASE("ppm round trip") {
    TempDir tmp;
    const auto img = random_image(13, 9, 1);
    const auto path = tmp.file("a.ppm");
    mw::save_ppm(img, path);

    const auto back = mw::load_ppm(path);
    CHECK(back.width == 13);
    CHECK(back.height == 9);
    CHECK(back.pixels == img.pixels);

    // fixed header layout
    const std::string bytes = read_bytes(path);
    CHECK(bytes.substr(0, 11) == "P6\n13 9\n255");
    CHECK(bytes.size() == 12 + img.pixels.size());
}

TEST_CASE("ppm header comments and whitespace") {
    TempDir tmp;
    const auto path = tmp.file("c.ppm");
    std::string body(2 * 1 * 3, '\0');
    body[0] = 'a';
    write_bytes(path, "P6 # comment\n# another line\n  2\t1 # dims\n255\n" + body);
    const auto img = mw::load_ppm(path);
    CHECK(img.width == 2);
    CHECK(img.height == 1);
    CHECK(img.pixels[0] == 'a');
    CHECK(img.pixels[5] == 0);
}

TEST_CASE("ppm malformed inputs") {
    TempDir tmp;
    CHECK_THROWS_AS((void)mw::load_ppm(tmp.file("missing.ppm")), mw::IoError);

    const auto magic = tmp.file("magic.ppm");
    write_bytes(magic, "P3\n1 1\n255\n0 0 0\n");
    CHECK_THROWS_AS((void)mw::load_ppm(magic), mw::ParseError);

    const auto maxval = tmp.file("maxval.ppm");
    write_bytes(maxval, "P6\n1 1\n65535\n" + std::string(6, '\0'));
    CHECK_THROWS_AS((void)mw::load_ppm(maxval), mw::ParseError);

    const auto truncated = tmp.file("short.ppm");
    write_bytes(truncated, "P6\n4 4\n255\n" + std::string(10, '\0'));
    CHECK_THROWS_AS((void)mw::load_ppm(truncated), mw::ParseError);

    const auto header_only = tmp.file("header.ppm");
    write_bytes(header_only, "P6\n4");
    CHECK_THROWS_AS((void)mw::load_ppm(header_only), mw::ParseError);

    const auto bad_dims = tmp.file("dims.ppm");
    write_bytes(bad_dims, "P6\n0 3\n255\n");
    CHECK_THROWS_AS((void)mw::load_ppm(bad_dims), mw::ParseError);

    const auto not_numbers = tmp.file("nan.ppm");
    write_bytes(not_numbers, "P6\nab cd\n255\n");
    CHECK_THROWS_AS((void)mw::load_ppm(not_numbers), mw::ParseError);
}

TEST_CASE("png round trip") {
    TempDir tmp;
    const auto img = random_image(17, 5, 2);
    const auto path = tmp.file("a.png");
    mw::save_png(img, path);

    const auto back = mw::load_png(path);
    CHECK(back.width == 17);
    CHECK(back.height == 5);
    CHECK(back.pixels == img.pixels);

    const auto garbage = tmp.file("b.png");
    write_bytes(garbage, "definitely not a png");
    CHECK_THROWS_AS((void)mw::load_png(garbage), mw::ParseError);
    CHECK_THROWS_AS((void)mw::load_png(tmp.file("missing.png")), mw::IoError);
}

TEST_CASE("extension dispatch") {
    TempDir tmp;
    const auto img = random_image(6, 6, 3);

    mw::save_image(img, tmp.file("x.PNG"));  // case-insensitive
    CHECK(mw::load_image(tmp.file("x.PNG")).pixels == img.pixels);

    mw::save_image(img, tmp.file("y.ppm"));
    CHECK(mw::load_image(tmp.file("y.ppm")).pixels == img.pixels);

    CHECK_THROWS_AS(mw::save_image(img, tmp.file("z.bmp")), mw::InvalidArgument);
    CHECK_THROWS_AS((void)mw::load_image(tmp.file("z.jpeg")), mw::InvalidArgument);
    CHECK_THROWS_AS((void)mw::load_image(tmp.file("noext")), mw::InvalidArgument);
}

TEST_CASE("save rejects malformed images") {
    TempDir tmp;
    mw::RasterImage bad;
    bad.width = 2;
    bad.height = 2;
    bad.pixels.resize(7);
    CHECK_THROWS_AS(mw::save_ppm(bad, tmp.file("bad.ppm")), mw::InvalidArgument);
    CHECK_THROWS_AS(mw::save_png(bad, tmp.file("bad.png")), mw::InvalidArgument);
}

TEST_CASE("matrix text dump") {
    TempDir tmp;
    Eigen::MatrixXd m(2, 3);
    m << 1, 2.5, -3, 0, 1e-4, 100;
    const auto path = tmp.file("m.txt");
    mw::save_matrix_text(m, path);
    CHECK(read_bytes(path) == "1 2.5 -3\n0 0.0001 100\n");
}

TEST_CASE("segments text dump") {
    TempDir tmp;
    mw::SegmentMap seg;
    seg.width = 3;
    seg.height = 2;
    seg.segment_count = 6;
    seg.labels = {0, 1, 2, 3, 4, 5};
    const auto path = tmp.file("s.txt");
    mw::save_segments_text(seg, path);
    CHECK(read_bytes(path) == "0 1 2\n3 4 5\n");
}

TEST_CASE("palette text dump") {
    TempDir tmp;
    mw::Palette p;
    p.colors = {{50.0, -1.25, 3.0}, {0.0, 0.5, -0.5}};
    const auto path = tmp.file("p.txt");
    mw::save_palette_text(p, path);
    CHECK(read_bytes(path) ==
          "50.000000 -1.250000 3.000000\n0.000000 0.500000 -0.500000\n");
}

}  // TEST_SUITE
