#include "duet/toy_backbone.hpp"

#include <cmath>
#include <random>

#include "duet/color_frequency.hpp"
#include "duet/errors.hpp"

namespace duet {

namespace {

// Portable uniform double in [0,1): top 53 bits of the engine output.
double next_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

} // namespace

Backbone init_backbone(const BackboneConfig& cfg) {
    if (cfg.input_channels <= 0)
        throw std::invalid_argument("init_backbone: input_channels must be positive");
    for (int w : cfg.stage_widths)
        if (w <= 0) throw std::invalid_argument("init_backbone: stage widths must be positive");

    Backbone net;
    net.input_channels = cfg.input_channels;
    net.stage_widths = cfg.stage_widths;

    std::mt19937_64 rng(cfg.seed);
    int in_c = cfg.input_channels;
    for (int s = 0; s < kStages; ++s) {
        ConvLayer& layer = net.layers[s];
        layer.in_channels = in_c;
        layer.out_channels = cfg.stage_widths[s];
        layer.weights.resize(static_cast<std::size_t>(layer.out_channels) * in_c * 9);
        const double scale = std::sqrt(1.0 / (9.0 * in_c));
        for (double& w : layer.weights) w = (2.0 * next_unit(rng) - 1.0) * scale;
        in_c = layer.out_channels;
    }
    return net;
}

Tensor3 stage_forward(const Backbone& backbone, int stage, const Tensor3& x) {
    if (stage < 0 || stage >= kStages)
        throw std::invalid_argument("stage_forward: stage index out of range");
    const ConvLayer& layer = backbone.layers[stage];
    if (x.channels != layer.in_channels)
        throw ShapeError("stage_forward: input channel count mismatch");
    if (x.height <= 0 || x.width <= 0)
        throw ShapeError("stage_forward: empty input");

    const int out_h = (x.height + 1) / 2;
    const int out_w = (x.width + 1) / 2;
    Tensor3 out(layer.out_channels, out_h, out_w);

    for (int o = 0; o < layer.out_channels; ++o) {
        double* out_plane = out.data.data() + static_cast<std::size_t>(o) * out.plane_size();
        for (int i = 0; i < layer.in_channels; ++i) {
            const double* in_plane = x.data.data() + static_cast<std::size_t>(i) * x.plane_size();
            for (int ky = 0; ky < 3; ++ky) {
                for (int kx = 0; kx < 3; ++kx) {
                    const double w = layer.w(o, i, ky, kx);
                    if (w == 0.0) continue;
                    for (int oy = 0; oy < out_h; ++oy) {
                        const int iy = oy * 2 + ky - 1;
                        if (iy < 0 || iy >= x.height) continue;
                        const double* in_row = in_plane + static_cast<std::size_t>(iy) * x.width;
                        double* out_row = out_plane + static_cast<std::size_t>(oy) * out_w;
                        const int x_off = kx - 1;
                        int ox0 = 0, ox1 = out_w;
                        if (x_off < 0) ox0 = 1;                     // ix = 2*ox + x_off >= 0
                        if (2 * (out_w - 1) + x_off >= x.width) ox1 = out_w - 1;
                        for (int ox = ox0; ox < ox1; ++ox)
                            out_row[ox] += w * in_row[2 * ox + x_off];
                    }
                }
            }
        }
        const std::size_t n = out.plane_size();
        for (std::size_t i = 0; i < n; ++i)
            if (out_plane[i] < 0.0) out_plane[i] = 0.0;
    }
    return out;
}

Embedding embed(const Backbone& backbone, const Tensor3& final_feature) {
    if (final_feature.channels != backbone.stage_widths[kStages - 1])
        throw ShapeError("embed: feature is not the final stage output");

    Embedding e;
    e.values.resize(final_feature.channels);
    const std::size_t n = final_feature.plane_size();
    for (int c = 0; c < final_feature.channels; ++c) {
        const double* p = final_feature.data.data() + static_cast<std::size_t>(c) * n;
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) acc += p[i];
        e.values[c] = acc / static_cast<double>(n);
    }
    double norm_sq = 0.0;
    for (double v : e.values) norm_sq += v * v;
    if (norm_sq > 0.0) {
        const double inv = 1.0 / std::sqrt(norm_sq);
        for (double& v : e.values) v *= inv;
        e.normalized = true;
    }
    return e;
}

double cosine_similarity(const Embedding& a, const Embedding& b) {
    if (a.values.size() != b.values.size())
        throw ShapeError("cosine_similarity: dimension mismatch");
    auto norm = [](const Embedding& e) {
        double s = 0.0;
        for (double v : e.values) s += v * v;
        return std::sqrt(s);
    };
    const double na = a.normalized ? 1.0 : norm(a);
    const double nb = b.normalized ? 1.0 : norm(b);
    if (na == 0.0 || nb == 0.0) return 0.0;
    double dot = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) dot += a.values[i] * b.values[i];
    return dot / (na * nb);
}

BackboneConfig client_backbone_config(int k, std::uint64_t seed) {
    BackboneConfig cfg;
    cfg.input_channels = kComponents * k;
    cfg.stage_widths = {16, 32, 64, 128};
    cfg.seed = seed;
    return cfg;
}

BackboneConfig server_backbone_config(int k, std::uint64_t seed) {
    BackboneConfig cfg;
    cfg.input_channels = kFreqChannels - kComponents * k;
    cfg.stage_widths = {32, 64, 128, 256};
    cfg.seed = seed;
    return cfg;
}

} // namespace duet
