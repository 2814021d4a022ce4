#pragma once

#include "duet/channel_split.hpp"
#include "duet/color_frequency.hpp"

namespace duet {

// 10*log10(255^2 / MSE) over all samples of all 3 components; +inf for
// identical images.
double psnr(const ImageRGB& a, const ImageRGB& b);

// Single-scale SSIM on the luma plane: 11x11 Gaussian window sigma 1.5,
// K1=0.01, K2=0.03, L=255, mean over valid window positions.
double ssim(const ImageRGB& a, const ImageRGB& b);

struct PrivacyReport {
    double ssim_xs = 0.0;
    double ssim_xc = 0.0;
    double psnr_xs = 0.0;
    double psnr_xc = 0.0;
    bool pass = false; // ssim_xs < threshold AND ssim_xs < ssim_xc
};

// Reconstructs both halves of the split via zero-padding and scores them
// against the raw image. Requires the reconstruction size to match raw,
// i.e. a tensor obtained from the raw image without upsampling.
PrivacyReport privacy_report(const ImageRGB& raw, const SplitPair& pair,
                             double ssim_threshold = 0.7);

} // namespace duet
