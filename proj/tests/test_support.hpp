#pragma once

#include <algorithm>
#include <cmath>
#include <random>

#include "duet/color_frequency.hpp"

namespace duet::testsupport {

// Procedural stand-in for an aligned face crop: gradient background, skin
// ellipse, textured hair, eyes and mouth, mild sensor noise. The texture
// matters: perfectly smooth content would concentrate all energy in a
// handful of channels and make the privacy metrics degenerate.
inline ImageRGB draw_portrait(std::uint32_t seed, int size = 112) {
    ImageRGB img(size, size);
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> noise(-6, 6);
    const double s = size / 112.0;
    auto put = [&](int r, int c, int ch, double v) {
        img.sample(r, c, ch) =
            static_cast<std::uint8_t>(std::clamp<long>(std::lround(v), 0, 255));
    };
    for (int r = 0; r < size; ++r)
        for (int c = 0; c < size; ++c) {
            const double x = c / s, y = r / s;
            double R = 60 + 0.5 * y, G = 70 + 0.3 * x, B = 110 - 0.2 * y;
            const double fx = (x - 56.0) / 38.0, fy = (y - 58.0) / 48.0;
            if (fx * fx + fy * fy < 1.0) {
                R = 190 + 15 * fx;
                G = 150 + 10 * fy;
                B = 120;
            }
            const double hx = (x - 56.0) / 46.0, hy = (y - 40.0) / 42.0;
            if (hx * hx + hy * hy < 1.0 && y < 40 + 10 * std::sin(x * 0.4)) {
                const double strand = 12 * std::sin(x * 1.3 + y * 0.25);
                R = 55 + strand;
                G = 38 + 0.6 * strand;
                B = 25;
            }
            const double e1 = std::pow((x - 40) / 6.0, 2) + std::pow((y - 50) / 3.5, 2);
            const double e2 = std::pow((x - 72) / 6.0, 2) + std::pow((y - 50) / 3.5, 2);
            if (e1 < 1.0 || e2 < 1.0) {
                R = 45;
                G = 32;
                B = 28;
            }
            if (y > 74 && y < 78 && x > 44 && x < 68) {
                R = 140;
                G = 70;
                B = 70;
            }
            put(r, c, 0, R + noise(rng));
            put(r, c, 1, G + noise(rng));
            put(r, c, 2, B + noise(rng));
        }
    return img;
}

} // namespace duet::testsupport
