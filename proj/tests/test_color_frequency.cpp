#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "duet/color_frequency.hpp"
#include "duet/errors.hpp"
#include "duet/ppm.hpp"

using namespace duet;

namespace {

ImageRGB random_image(int h, int w, std::uint32_t seed) {
    ImageRGB img(h, w);
    std::mt19937 rng(seed);
    for (auto& v : img.data) v = static_cast<std::uint8_t>(rng() & 0xff);
    return img;
}

// Independent reference: direct 2-D DCT-II of one level-shifted 8x8 block,
// four explicit loops, no separability.
void naive_block_dct(const Plane& plane, int by, int bx, double out[8][8]) {
    const double pi = std::acos(-1.0);
    for (int u = 0; u < 8; ++u) {
        for (int v = 0; v < 8; ++v) {
            double acc = 0.0;
            for (int i = 0; i < 8; ++i) {
                for (int j = 0; j < 8; ++j) {
                    const double x = plane.at(by * 8 + i, bx * 8 + j) - 128.0;
                    acc += x * std::cos((2 * i + 1) * u * pi / 16.0) *
                           std::cos((2 * j + 1) * v * pi / 16.0);
                }
            }
            const double au = u == 0 ? std::sqrt(1.0 / 8.0) : 0.5;
            const double av = v == 0 ? std::sqrt(1.0 / 8.0) : 0.5;
            out[u][v] = au * av * acc;
        }
    }
}

} // namespace

TEST_CASE("zigzag scan matches the JPEG order") {
    // First ten entries and the last one of the standard scan.
    const std::pair<int, int> expected[] = {{0, 0}, {0, 1}, {1, 0}, {2, 0}, {1, 1},
                                            {0, 2}, {0, 3}, {1, 2}, {2, 1}, {3, 0}};
    for (int z = 0; z < 10; ++z) {
        CHECK(zigzag_freq(z) == expected[z]);
    }
    CHECK(zigzag_freq(63) == std::pair<int, int>{7, 7});

    // Bijection between (u,v) and scan position.
    for (int u = 0; u < 8; ++u)
        for (int v = 0; v < 8; ++v)
            CHECK(zigzag_freq(zigzag_index(u, v)) == std::pair<int, int>{u, v});
}

TEST_CASE("channel ids decompose into component and zigzag position") {
    CHECK(channel_component(0) == 0);
    CHECK(channel_component(64) == 1);
    CHECK(channel_component(191) == 2);
    CHECK(channel_zigzag(64) == 0);   // Cb DC
    CHECK(channel_zigzag(191) == 63);
    CHECK(channel_id(2, 0) == 128);   // Cr DC
}

TEST_CASE("color conversion hits the reference values") {
    ImageRGB img(1, 3);
    // red, mid gray, white
    img.sample(0, 0, 0) = 255;
    for (int ch = 0; ch < 3; ++ch) img.sample(0, 1, ch) = 128;
    for (int ch = 0; ch < 3; ++ch) img.sample(0, 2, ch) = 255;

    ImageYCbCr ycc = rgb_to_ycbcr(img);
    CHECK(ycc.planes[0].at(0, 0) == doctest::Approx(76.245).epsilon(1e-12));
    CHECK(ycc.planes[1].at(0, 0) == doctest::Approx(84.97232).epsilon(1e-12));
    CHECK(ycc.planes[2].at(0, 0) == doctest::Approx(255.5).epsilon(1e-12));
    for (int p = 0; p < 3; ++p)
        CHECK(ycc.planes[p].at(0, 1) == doctest::Approx(128.0));
    CHECK(ycc.planes[0].at(0, 2) == doctest::Approx(255.0));
    CHECK(ycc.planes[1].at(0, 2) == doctest::Approx(128.0));
    CHECK(ycc.planes[2].at(0, 2) == doctest::Approx(128.0));
}

TEST_CASE("rgb -> ycbcr -> rgb is the identity on 8-bit inputs") {
    ImageRGB img = random_image(16, 16, 7);
    // Include the cube corners.
    const std::uint8_t corners[8][3] = {{0, 0, 0},    {255, 0, 0},   {0, 255, 0},
                                        {0, 0, 255},  {255, 255, 0}, {255, 0, 255},
                                        {0, 255, 255}, {255, 255, 255}};
    for (int i = 0; i < 8; ++i)
        for (int ch = 0; ch < 3; ++ch) img.sample(0, i, ch) = corners[i][ch];

    ImageRGB back = ycbcr_to_rgb(rgb_to_ycbcr(img));
    REQUIRE(back.data.size() == img.data.size());
    for (std::size_t i = 0; i < img.data.size(); ++i) CHECK(back.data[i] == img.data[i]);
}

TEST_CASE("bdct agrees with the naive per-block transform") {
    ImageRGB img = random_image(24, 16, 11);
    ImageYCbCr ycc = rgb_to_ycbcr(img);
    FrequencyTensor ft = bdct(ycc);
    REQUIRE(ft.grid_h == 3);
    REQUIRE(ft.grid_w == 2);

    double ref[8][8];
    for (int comp = 0; comp < 3; ++comp) {
        for (int by = 0; by < ft.grid_h; ++by) {
            for (int bx = 0; bx < ft.grid_w; ++bx) {
                naive_block_dct(ycc.planes[comp], by, bx, ref);
                for (int u = 0; u < 8; ++u)
                    for (int v = 0; v < 8; ++v) {
                        const int c = channel_id(comp, zigzag_index(u, v));
                        CHECK(ft.at(c, by, bx) ==
                              doctest::Approx(ref[u][v]).epsilon(1e-9).scale(1.0));
                    }
            }
        }
    }
}

TEST_CASE("constant 129 luma produces DC 8 and zero AC") {
    ImageYCbCr ycc(8, 8);
    for (auto& v : ycc.planes[0].data) v = 129.0;
    for (auto& v : ycc.planes[1].data) v = 128.0;
    for (auto& v : ycc.planes[2].data) v = 128.0;
    FrequencyTensor ft = bdct(ycc);
    CHECK(ft.at(0, 0, 0) == doctest::Approx(8.0).epsilon(1e-12));
    for (int c = 1; c < kFreqChannels; ++c)
        CHECK(ft.at(c, 0, 0) == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
}

TEST_CASE("block transform preserves energy") {
    ImageRGB img = random_image(8, 8, 23);
    ImageYCbCr ycc = rgb_to_ycbcr(img);
    FrequencyTensor ft = bdct(ycc);
    for (int comp = 0; comp < 3; ++comp) {
        double pixel_sq = 0.0;
        for (double v : ycc.planes[comp].data) pixel_sq += (v - 128.0) * (v - 128.0);
        double coef_sq = 0.0;
        for (int z = 0; z < 64; ++z) {
            const double c = ft.at(channel_id(comp, z), 0, 0);
            coef_sq += c * c;
        }
        CHECK(coef_sq == doctest::Approx(pixel_sq).epsilon(1e-9));
    }
}

TEST_CASE("ibdct inverts bdct") {
    ImageRGB img = random_image(32, 40, 31);
    ImageYCbCr ycc = rgb_to_ycbcr(img);
    ImageYCbCr back = ibdct(bdct(ycc));
    REQUIRE(back.height == ycc.height);
    REQUIRE(back.width == ycc.width);
    for (int p = 0; p < 3; ++p)
        for (std::size_t i = 0; i < ycc.planes[p].data.size(); ++i)
            CHECK(back.planes[p].data[i] ==
                  doctest::Approx(ycc.planes[p].data[i]).epsilon(1e-6).scale(1.0));
}

TEST_CASE("bdct rejects sizes that are not multiples of 8") {
    ImageYCbCr ycc(12, 16);
    CHECK_THROWS_AS(bdct(ycc), ShapeError);
}

TEST_CASE("bilinear resize: identity and pinned 2->4 upsample") {
    Plane p(2, 2);
    p.at(0, 0) = 10.0;
    p.at(0, 1) = 20.0;
    p.at(1, 0) = 30.0;
    p.at(1, 1) = 40.0;

    Plane same = bilinear_resize(p, 2, 2);
    for (std::size_t i = 0; i < p.data.size(); ++i)
        CHECK(same.data[i] == doctest::Approx(p.data[i]));

    // Half-pixel centers: output rows sample input y = -0.25, 0.25, 0.75,
    // 1.25 (clamped), giving weights 1, 3/4, 1/4, 0 on the first row.
    Plane up = bilinear_resize(p, 4, 4);
    CHECK(up.at(0, 0) == doctest::Approx(10.0));
    CHECK(up.at(0, 1) == doctest::Approx(12.5));
    CHECK(up.at(0, 2) == doctest::Approx(17.5));
    CHECK(up.at(0, 3) == doctest::Approx(20.0));
    CHECK(up.at(1, 1) == doctest::Approx(0.75 * 12.5 + 0.25 * 32.5));
    CHECK(up.at(3, 3) == doctest::Approx(40.0));
}

TEST_CASE("upsample8 keeps constants constant and multiplies size by 8") {
    ImageYCbCr ycc(8, 16);
    for (int p = 0; p < 3; ++p)
        for (auto& v : ycc.planes[p].data) v = 42.0 + p;
    ImageYCbCr up = upsample8(ycc);
    REQUIRE(up.height == 64);
    REQUIRE(up.width == 128);
    for (int p = 0; p < 3; ++p)
        for (double v : up.planes[p].data) CHECK(v == doctest::Approx(42.0 + p));
}

TEST_CASE("channel energy ranks by mean magnitude with index tie-break") {
    FrequencyTensor ft(2, 2);
    // Give Y channels energy equal to their zigzag position; leave Cb/Cr zero.
    for (int z = 0; z < 64; ++z)
        for (int i = 0; i < 4; ++i) ft.channel(z)[i] = (i % 2 ? 1.0 : -1.0) * z;

    EnergyReport report = channel_energy(ft);
    CHECK(report.energy[10] == doctest::Approx(10.0));
    CHECK(report.energy[64] == doctest::Approx(0.0));
    // Y ranking: 63, 62, ..., 0.
    for (int i = 0; i < 64; ++i) CHECK(report.ranking[0][i] == 63 - i);
    // Cb is all ties -> ascending channel ids.
    for (int i = 0; i < 64; ++i) CHECK(report.ranking[1][i] == 64 + i);
}

TEST_CASE("ppm round trip and malformed input") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "duet_ppm_test";
    fs::create_directories(dir);
    const std::string path = (dir / "img.ppm").string();

    ImageRGB img = random_image(9, 13, 99);
    write_ppm(path, img);
    ImageRGB back = read_ppm(path);
    REQUIRE(back.height == img.height);
    REQUIRE(back.width == img.width);
    CHECK(back.data == img.data);

    const std::string bad = (dir / "bad.ppm").string();
    {
        std::ofstream out(bad, std::ios::binary);
        out << "P5\n4 4\n255\n"; // grayscale magic
    }
    CHECK_THROWS_AS(read_ppm(bad), IoError);
    {
        std::ofstream out(bad, std::ios::binary);
        out << "P6\n4 4\n255\nshort"; // truncated pixel data
    }
    CHECK_THROWS_AS(read_ppm(bad), IoError);
    CHECK_THROWS_AS(read_ppm((dir / "missing.ppm").string()), IoError);
    fs::remove_all(dir);
}
