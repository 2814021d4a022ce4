#include "duet/attention_transfer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "duet/color_frequency.hpp"
#include "duet/errors.hpp"

namespace duet {

namespace {

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

void require_same_size(const Tensor3& f, const FeatureMask& m, const char* op) {
    if (f.height != m.height || f.width != m.width)
        throw ShapeError(std::string(op) + ": mask size does not match feature spatial size");
}

} // namespace

FeatureMask compute_mask(const Tensor3& feature) {
    if (feature.channels <= 0 || feature.height <= 0 || feature.width <= 0)
        throw ShapeError("compute_mask: empty feature");

    FeatureMask mask(feature.height, feature.width);
    const std::size_t n = feature.plane_size();
    for (int c = 0; c < feature.channels; ++c) {
        const double* p = feature.data.data() + static_cast<std::size_t>(c) * n;
        for (std::size_t i = 0; i < n; ++i) mask.data[i] += p[i];
    }
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (double& v : mask.data) {
        v /= feature.channels;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (hi == lo) {
        std::fill(mask.data.begin(), mask.data.end(), 0.0);
        return mask;
    }
    const double inv = 1.0 / (hi - lo);
    for (double& v : mask.data) v = (v - lo) * inv;
    return mask;
}

FeatureMask resize_mask(const FeatureMask& mask, int h, int w) {
    if (h <= 0 || w <= 0) throw ShapeError("resize_mask: target size must be positive");
    Plane in(mask.height, mask.width);
    in.data = mask.data;
    Plane out = bilinear_resize(in, h, w);
    FeatureMask result(h, w);
    for (std::size_t i = 0; i < out.data.size(); ++i)
        result.data[i] = std::clamp(out.data[i], 0.0, 1.0);
    return result;
}

Tensor3 interactive_update(const Tensor3& feature, const FeatureMask& mask, double w) {
    require_same_size(feature, mask, "interactive_update");
    if (w == 0.0) return feature;

    Tensor3 out = feature;
    const std::size_t n = feature.plane_size();
    for (int c = 0; c < feature.channels; ++c) {
        double* p = out.data.data() + static_cast<std::size_t>(c) * n;
        for (std::size_t i = 0; i < n; ++i)
            p[i] += w * sigmoid(p[i]) * mask.data[i];
    }
    return out;
}

UpdateGradients update_gradients(const Tensor3& feature, const FeatureMask& mask, double w) {
    require_same_size(feature, mask, "update_gradients");

    UpdateGradients g;
    g.d_feature = Tensor3(feature.channels, feature.height, feature.width);
    g.d_weight = Tensor3(feature.channels, feature.height, feature.width);
    const std::size_t n = feature.plane_size();
    for (int c = 0; c < feature.channels; ++c) {
        const std::size_t off = static_cast<std::size_t>(c) * n;
        for (std::size_t i = 0; i < n; ++i) {
            const double s = sigmoid(feature.data[off + i]);
            const double r = mask.data[i];
            g.d_feature.data[off + i] = w * r * s * (1.0 - s) + 1.0;
            g.d_weight.data[off + i] = s * r;
        }
    }
    return g;
}

} // namespace duet
