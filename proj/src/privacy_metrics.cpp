#include "duet/privacy_metrics.hpp"

#include <array>
#include <cmath>
#include <limits>

#include "duet/errors.hpp"

namespace duet {

namespace {

constexpr int kWindow = 11;
constexpr double kSigma = 1.5;
constexpr double kC1 = (0.01 * 255.0) * (0.01 * 255.0);
constexpr double kC2 = (0.03 * 255.0) * (0.03 * 255.0);

std::array<double, kWindow> gaussian_kernel() {
    std::array<double, kWindow> k{};
    double sum = 0.0;
    for (int i = 0; i < kWindow; ++i) {
        const double d = i - (kWindow - 1) / 2.0;
        k[i] = std::exp(-d * d / (2.0 * kSigma * kSigma));
        sum += k[i];
    }
    for (double& v : k) v /= sum;
    return k;
}

Plane luma(const ImageRGB& img) {
    Plane out(img.height, img.width);
    for (std::size_t i = 0; i < out.data.size(); ++i) {
        out.data[i] = 0.299 * img.data[3 * i + 0] + 0.587 * img.data[3 * i + 1] +
                      0.114 * img.data[3 * i + 2];
    }
    return out;
}

// Separable Gaussian filtering restricted to fully-covered positions;
// output is (h-10) x (w-10).
Plane filter_valid(const Plane& in) {
    static const std::array<double, kWindow> kernel = gaussian_kernel();
    Plane rows(in.height, in.width - kWindow + 1);
    for (int r = 0; r < in.height; ++r) {
        for (int c = 0; c < rows.width; ++c) {
            double s = 0.0;
            for (int t = 0; t < kWindow; ++t) s += kernel[t] * in.at(r, c + t);
            rows.at(r, c) = s;
        }
    }
    Plane out(in.height - kWindow + 1, rows.width);
    for (int r = 0; r < out.height; ++r) {
        for (int c = 0; c < out.width; ++c) {
            double s = 0.0;
            for (int t = 0; t < kWindow; ++t) s += kernel[t] * rows.at(r + t, c);
            out.at(r, c) = s;
        }
    }
    return out;
}

Plane multiply(const Plane& a, const Plane& b) {
    Plane out(a.height, a.width);
    for (std::size_t i = 0; i < out.data.size(); ++i) out.data[i] = a.data[i] * b.data[i];
    return out;
}

} // namespace

double psnr(const ImageRGB& a, const ImageRGB& b) {
    if (a.height != b.height || a.width != b.width)
        throw ShapeError("psnr: image sizes differ");
    double se = 0.0;
    for (std::size_t i = 0; i < a.data.size(); ++i) {
        const double d = static_cast<double>(a.data[i]) - static_cast<double>(b.data[i]);
        se += d * d;
    }
    if (se == 0.0) return std::numeric_limits<double>::infinity();
    const double mse = se / static_cast<double>(a.data.size());
    return 10.0 * std::log10(255.0 * 255.0 / mse);
}

double ssim(const ImageRGB& a, const ImageRGB& b) {
    if (a.height != b.height || a.width != b.width)
        throw ShapeError("ssim: image sizes differ");
    if (a.height < kWindow || a.width < kWindow)
        throw ShapeError("ssim: image smaller than the 11x11 window");

    const Plane x = luma(a);
    const Plane y = luma(b);
    const Plane mu_x = filter_valid(x);
    const Plane mu_y = filter_valid(y);
    const Plane xx = filter_valid(multiply(x, x));
    const Plane yy = filter_valid(multiply(y, y));
    const Plane xy = filter_valid(multiply(x, y));

    double acc = 0.0;
    for (std::size_t i = 0; i < mu_x.data.size(); ++i) {
        const double mx = mu_x.data[i];
        const double my = mu_y.data[i];
        const double var_x = xx.data[i] - mx * mx;
        const double var_y = yy.data[i] - my * my;
        const double cov = xy.data[i] - mx * my;
        const double num = (2.0 * mx * my + kC1) * (2.0 * cov + kC2);
        const double den = (mx * mx + my * my + kC1) * (var_x + var_y + kC2);
        acc += num / den;
    }
    return acc / static_cast<double>(mu_x.data.size());
}

PrivacyReport privacy_report(const ImageRGB& raw, const SplitPair& pair,
                             double ssim_threshold) {
    const ImageRGB recon_xs = zero_pad_reconstruct(pair.x_s);
    const ImageRGB recon_xc = zero_pad_reconstruct(pair.x_c);
    if (recon_xs.height != raw.height || recon_xs.width != raw.width)
        throw ShapeError("privacy_report: reconstruction size does not match raw image");

    PrivacyReport report;
    report.ssim_xs = ssim(recon_xs, raw);
    report.ssim_xc = ssim(recon_xc, raw);
    report.psnr_xs = psnr(recon_xs, raw);
    report.psnr_xc = psnr(recon_xc, raw);
    report.pass = report.ssim_xs < ssim_threshold && report.ssim_xs < report.ssim_xc;
    return report;
}

} // namespace duet
