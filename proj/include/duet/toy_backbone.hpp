#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace duet {

// Dense feature map, row-major within each channel.
struct Tensor3 {
    int channels = 0;
    int height = 0;
    int width = 0;
    std::vector<double> data;

    Tensor3() = default;
    Tensor3(int c, int h, int w)
        : channels(c), height(h), width(w),
          data(static_cast<std::size_t>(c) * h * w, 0.0) {}

    std::size_t plane_size() const { return static_cast<std::size_t>(height) * width; }
    double at(int c, int y, int x) const {
        return data[(static_cast<std::size_t>(c) * height + y) * width + x];
    }
    double& at(int c, int y, int x) {
        return data[(static_cast<std::size_t>(c) * height + y) * width + x];
    }
};

inline constexpr int kStages = 4;

struct BackboneConfig {
    int input_channels = 0;
    std::array<int, kStages> stage_widths{};
    std::uint64_t seed = 0;
    std::array<double, kStages> interaction_weights{1.0, 1.0, 1.0, 1.0};
};

// One 3x3 stride-2 convolution, zero padding 1, no bias.
struct ConvLayer {
    int in_channels = 0;
    int out_channels = 0;
    std::vector<double> weights; // [out][in][ky][kx]

    double w(int o, int i, int ky, int kx) const {
        return weights[((static_cast<std::size_t>(o) * in_channels + i) * 3 + ky) * 3 + kx];
    }
};

struct Backbone {
    int input_channels = 0;
    std::array<int, kStages> stage_widths{};
    std::array<ConvLayer, kStages> layers;
};

struct Embedding {
    std::vector<double> values;
    bool normalized = false;
};

// Deterministic across platforms: weights are drawn from a seeded mt19937_64
// stream, uniform in [-s, s] with s = sqrt(1/(9 * fan_in)).
Backbone init_backbone(const BackboneConfig& cfg);

// Convolution (stride 2, pad 1) followed by rectification. Output spatial
// size is ceil(input/2).
Tensor3 stage_forward(const Backbone& backbone, int stage, const Tensor3& x);

// Global average pool per channel, then L2 normalization. An all-zero
// feature yields a zero vector with normalized=false.
Embedding embed(const Backbone& backbone, const Tensor3& final_feature);

double cosine_similarity(const Embedding& a, const Embedding& b);

// Defaults reflecting the client/server asymmetry; k crucial channels per
// component give the client 3k input channels and the server 192-3k.
BackboneConfig client_backbone_config(int k, std::uint64_t seed);
BackboneConfig server_backbone_config(int k, std::uint64_t seed);

} // namespace duet
