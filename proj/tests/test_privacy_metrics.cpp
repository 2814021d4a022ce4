#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "duet/channel_split.hpp"
#include "duet/errors.hpp"
#include "duet/privacy_metrics.hpp"

using namespace duet;

namespace {

ImageRGB random_image(int h, int w, std::uint32_t seed) {
    ImageRGB img(h, w);
    std::mt19937 rng(seed);
    for (auto& v : img.data) v = static_cast<std::uint8_t>(rng() & 0xff);
    return img;
}

ImageRGB add_noise(const ImageRGB& img, int amplitude, std::uint32_t seed) {
    ImageRGB out = img;
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> dist(-amplitude, amplitude);
    for (auto& v : out.data) {
        int x = static_cast<int>(v) + dist(rng);
        v = static_cast<std::uint8_t>(std::clamp(x, 0, 255));
    }
    return out;
}

// Reference SSIM: per-window loops, no separable filtering, no shared code
// with the library implementation.
double naive_ssim(const ImageRGB& a, const ImageRGB& b) {
    const int h = a.height, w = a.width;
    std::vector<double> la(static_cast<std::size_t>(h) * w), lb(la.size());
    for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c) {
            const std::size_t i = static_cast<std::size_t>(r) * w + c;
            la[i] = 0.299 * a.sample(r, c, 0) + 0.587 * a.sample(r, c, 1) +
                    0.114 * a.sample(r, c, 2);
            lb[i] = 0.299 * b.sample(r, c, 0) + 0.587 * b.sample(r, c, 1) +
                    0.114 * b.sample(r, c, 2);
        }

    double kernel[11][11];
    double ksum = 0.0;
    for (int i = 0; i < 11; ++i)
        for (int j = 0; j < 11; ++j) {
            const double dy = i - 5.0, dx = j - 5.0;
            kernel[i][j] = std::exp(-(dy * dy + dx * dx) / (2.0 * 1.5 * 1.5));
            ksum += kernel[i][j];
        }
    for (auto& row : kernel)
        for (auto& v : row) v /= ksum;

    const double c1 = (0.01 * 255) * (0.01 * 255);
    const double c2 = (0.03 * 255) * (0.03 * 255);
    double total = 0.0;
    int windows = 0;
    for (int r = 0; r + 11 <= h; ++r)
        for (int c = 0; c + 11 <= w; ++c) {
            double mx = 0, my = 0, xx = 0, yy = 0, xy = 0;
            for (int i = 0; i < 11; ++i)
                for (int j = 0; j < 11; ++j) {
                    const double x = la[static_cast<std::size_t>(r + i) * w + (c + j)];
                    const double y = lb[static_cast<std::size_t>(r + i) * w + (c + j)];
                    mx += kernel[i][j] * x;
                    my += kernel[i][j] * y;
                    xx += kernel[i][j] * x * x;
                    yy += kernel[i][j] * y * y;
                    xy += kernel[i][j] * x * y;
                }
            const double vx = xx - mx * mx;
            const double vy = yy - my * my;
            const double cov = xy - mx * my;
            total += ((2 * mx * my + c1) * (2 * cov + c2)) /
                     ((mx * mx + my * my + c1) * (vx + vy + c2));
            ++windows;
        }
    return total / windows;
}

} // namespace

TEST_CASE("psnr of identical images is infinite") {
    ImageRGB img = random_image(8, 8, 5);
    CHECK(std::isinf(psnr(img, img)));
    CHECK(psnr(img, img) > 0);
}

TEST_CASE("psnr matches the closed form for a uniform offset") {
    ImageRGB a(4, 4);
    ImageRGB b(4, 4);
    for (auto& v : a.data) v = 100;
    for (auto& v : b.data) v = 105;
    CHECK(psnr(a, b) == doctest::Approx(10.0 * std::log10(255.0 * 255.0 / 25.0)).epsilon(1e-12));
}

TEST_CASE("psnr requires matching sizes") {
    ImageRGB a(4, 4), b(4, 5);
    CHECK_THROWS_AS(psnr(a, b), ShapeError);
}

TEST_CASE("ssim of an image with itself is 1") {
    ImageRGB img = random_image(16, 16, 6);
    CHECK(ssim(img, img) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("ssim matches the windowed reference") {
    ImageRGB a = random_image(16, 20, 7);
    SUBCASE("against noise") {
        ImageRGB b = add_noise(a, 40, 8);
        CHECK(ssim(a, b) == doctest::Approx(naive_ssim(a, b)).epsilon(1e-9));
    }
    SUBCASE("against an unrelated image") {
        ImageRGB b = random_image(16, 20, 9);
        CHECK(ssim(a, b) == doctest::Approx(naive_ssim(a, b)).epsilon(1e-9));
    }
    SUBCASE("non-square, minimal height") {
        ImageRGB c = random_image(11, 32, 10);
        ImageRGB d = add_noise(c, 25, 11);
        CHECK(ssim(c, d) == doctest::Approx(naive_ssim(c, d)).epsilon(1e-9));
    }
}

TEST_CASE("ssim degrades monotonically with noise amplitude") {
    ImageRGB img = random_image(32, 32, 12);
    const double small = ssim(img, add_noise(img, 8, 13));
    const double large = ssim(img, add_noise(img, 80, 14));
    CHECK(small > large);
    CHECK(small < 1.0);
    CHECK(large > -1.0);
}

TEST_CASE("ssim rejects images smaller than the window or mismatched") {
    ImageRGB tiny(8, 8), other(8, 8);
    CHECK_THROWS_AS(ssim(tiny, other), ShapeError);
    ImageRGB a(16, 16), b(16, 17);
    CHECK_THROWS_AS(ssim(a, b), ShapeError);
}

TEST_CASE("privacy report scores both reconstructions") {
    // Smooth content concentrates energy in the low frequencies, which is
    // the regime the split is designed for. (A pure-noise image inverts the
    // relation: its structure lives in the high-frequency half.)
    ImageRGB img(24, 24);
    for (int r = 0; r < 24; ++r)
        for (int c = 0; c < 24; ++c) {
            img.sample(r, c, 0) = static_cast<std::uint8_t>(40 + 3 * r);
            img.sample(r, c, 1) = static_cast<std::uint8_t>(60 + 3 * c);
            img.sample(r, c, 2) = static_cast<std::uint8_t>(90 + r + c);
        }
    FrequencyTensor ft = bdct(rgb_to_ycbcr(img));
    SplitSpec spec = make_split_spec(channel_energy(ft), 10);
    SplitPair pair = split(ft, spec);

    PrivacyReport report = privacy_report(img, pair, 0.7);
    CHECK(report.ssim_xs >= -1.0);
    CHECK(report.ssim_xs <= 1.0);
    CHECK(report.psnr_xs > 0.0);
    CHECK(report.pass == (report.ssim_xs < 0.7 && report.ssim_xs < report.ssim_xc));

    // The crucial half keeps the dominant terms, so its reconstruction
    // resembles the source far more than the server half does. (Whether
    // ssim_xs clears a given threshold depends on the image corpus.)
    CHECK(report.ssim_xc > report.ssim_xs);
    CHECK(report.psnr_xc > report.psnr_xs);
}
