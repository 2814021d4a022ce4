#pragma once

#include <vector>

#include "duet/toy_backbone.hpp"

namespace duet {

// One-channel spatial attention mask, values in [0,1].
struct FeatureMask {
    int height = 0;
    int width = 0;
    std::vector<double> data;

    FeatureMask() = default;
    FeatureMask(int h, int w)
        : height(h), width(w), data(static_cast<std::size_t>(h) * w, 0.0) {}

    double at(int r, int c) const { return data[static_cast<std::size_t>(r) * width + c]; }
    double& at(int r, int c) { return data[static_cast<std::size_t>(r) * width + c]; }
};

// Stage-ordered masks (56/28/14/7 for a 112x112 pipeline).
using MaskBundle = std::vector<FeatureMask>;

// Channel-wise mean followed by min-max normalization to [0,1]. A constant
// mean map carries no spatial information and yields an all-zero mask.
FeatureMask compute_mask(const Tensor3& feature);

// Bilinear, half-pixel-center convention, clamped back to [0,1].
FeatureMask resize_mask(const FeatureMask& mask, int h, int w);

// F' = w * (sigmoid(F) .* R) + F, with R broadcast across channels.
// w = 0 returns the feature untouched.
Tensor3 interactive_update(const Tensor3& feature, const FeatureMask& mask, double w);

struct UpdateGradients {
    Tensor3 d_feature; // dF'/dF, element-wise
    Tensor3 d_weight;  // dF'/dw, element-wise
};

// Analytic partials of the interactive update.
UpdateGradients update_gradients(const Tensor3& feature, const FeatureMask& mask, double w);

} // namespace duet
