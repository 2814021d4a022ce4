#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

namespace duet {

inline constexpr int kBlockSize = 8;
inline constexpr int kFreqPerComponent = 64;
inline constexpr int kComponents = 3; // Y, Cb, Cr
inline constexpr int kFreqChannels = kComponents * kFreqPerComponent;

// Row-major real-valued raster.
struct Plane {
    int height = 0;
    int width = 0;
    std::vector<double> data;

    Plane() = default;
    Plane(int h, int w, double fill = 0.0)
        : height(h), width(w), data(static_cast<std::size_t>(h) * w, fill) {}

    double at(int r, int c) const { return data[static_cast<std::size_t>(r) * width + c]; }
    double& at(int r, int c) { return data[static_cast<std::size_t>(r) * width + c]; }
};

// 8-bit RGB image, 3 interleaved samples per pixel.
struct ImageRGB {
    int height = 0;
    int width = 0;
    std::vector<std::uint8_t> data;

    ImageRGB() = default;
    ImageRGB(int h, int w) : height(h), width(w), data(static_cast<std::size_t>(h) * w * 3, 0) {}

    std::uint8_t sample(int r, int c, int ch) const {
        return data[(static_cast<std::size_t>(r) * width + c) * 3 + ch];
    }
    std::uint8_t& sample(int r, int c, int ch) {
        return data[(static_cast<std::size_t>(r) * width + c) * 3 + ch];
    }
};

// Real-valued Y/Cb/Cr planes, nominal range [0,255], kept unclamped.
struct ImageYCbCr {
    int height = 0;
    int width = 0;
    std::array<Plane, 3> planes;

    ImageYCbCr() = default;
    ImageYCbCr(int h, int w) : height(h), width(w) {
        for (auto& p : planes) p = Plane(h, w);
    }
};

// Reorganized block-DCT coefficients: 192 channels of grid_h x grid_w planes.
// Channels 0..63 are Y, 64..127 Cb, 128..191 Cr; within a component the
// channels follow the JPEG zigzag scan, so channel 0 of a component is DC.
struct FrequencyTensor {
    int grid_h = 0;
    int grid_w = 0;
    std::vector<double> data; // [channel][row][col]

    FrequencyTensor() = default;
    FrequencyTensor(int h, int w)
        : grid_h(h), grid_w(w),
          data(static_cast<std::size_t>(kFreqChannels) * h * w, 0.0) {}

    std::size_t plane_size() const { return static_cast<std::size_t>(grid_h) * grid_w; }
    double* channel(int c) { return data.data() + static_cast<std::size_t>(c) * plane_size(); }
    const double* channel(int c) const {
        return data.data() + static_cast<std::size_t>(c) * plane_size();
    }
    double at(int c, int r, int col) const {
        return channel(c)[static_cast<std::size_t>(r) * grid_w + col];
    }
    double& at(int c, int r, int col) {
        return channel(c)[static_cast<std::size_t>(r) * grid_w + col];
    }
};

// Channel index map: channel id <-> (component, zigzag position, (u,v)).
int zigzag_index(int u, int v);               // (u,v) in [0,8)^2 -> [0,64)
std::pair<int, int> zigzag_freq(int z);       // inverse of zigzag_index
inline int channel_component(int c) { return c / kFreqPerComponent; }
inline int channel_zigzag(int c) { return c % kFreqPerComponent; }
inline int channel_id(int component, int z) { return component * kFreqPerComponent + z; }

// Full-range JFIF color transforms. Forward keeps real values unclamped;
// the inverse rounds half-up and clamps to [0,255].
ImageYCbCr rgb_to_ycbcr(const ImageRGB& img);
ImageRGB ycbcr_to_rgb(const ImageYCbCr& img);

// Bilinear resampling with half-pixel centers and edge clamping:
// output sample (i,j) reads the input at ((i+0.5)*in/out - 0.5, ...).
Plane bilinear_resize(const Plane& plane, int out_h, int out_w);
Plane bilinear_upsample(const Plane& plane, int factor);
ImageYCbCr upsample8(const ImageYCbCr& img);

// Forward/inverse block DCT. Each component is level-shifted by -128 and
// transformed per 8x8 block with the orthonormal 2-D DCT-II.
FrequencyTensor bdct(const ImageYCbCr& img);
ImageYCbCr ibdct(const FrequencyTensor& ft);

struct EnergyReport {
    std::array<double, kFreqChannels> energy{}; // mean |coefficient| per channel
    // Per component: the 64 global channel ids sorted by descending energy,
    // ties broken by ascending channel id.
    std::array<std::array<int, kFreqPerComponent>, kComponents> ranking{};
};

EnergyReport channel_energy(const FrequencyTensor& ft);

} // namespace duet
