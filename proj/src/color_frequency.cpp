#include "duet/color_frequency.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "duet/errors.hpp"

namespace duet {

namespace {

struct ZigzagTables {
    std::array<int, 64> index;                 // (u*8+v) -> zigzag position
    std::array<std::pair<int, int>, 64> freq;  // zigzag position -> (u,v)

    ZigzagTables() {
        int z = 0;
        for (int s = 0; s <= 14; ++s) {
            if (s % 2 == 0) {
                // even diagonal: walk from (s,0) up to (0,s)
                for (int u = std::min(s, 7); u >= std::max(0, s - 7); --u) {
                    int v = s - u;
                    index[u * 8 + v] = z;
                    freq[z] = {u, v};
                    ++z;
                }
            } else {
                for (int v = std::min(s, 7); v >= std::max(0, s - 7); --v) {
                    int u = s - v;
                    index[u * 8 + v] = z;
                    freq[z] = {u, v};
                    ++z;
                }
            }
        }
    }
};

const ZigzagTables& zigzag_tables() {
    static const ZigzagTables t;
    return t;
}

// Orthonormal 8-point DCT-II basis: B[u][n] = a(u) cos((2n+1)u*pi/16).
struct DctBasis {
    double b[8][8];
    DctBasis() {
        const double pi = std::acos(-1.0);
        for (int u = 0; u < 8; ++u) {
            double a = (u == 0) ? std::sqrt(1.0 / 8.0) : std::sqrt(2.0 / 8.0);
            for (int n = 0; n < 8; ++n) {
                b[u][n] = a * std::cos((2 * n + 1) * u * pi / 16.0);
            }
        }
    }
};

const DctBasis& dct_basis() {
    static const DctBasis basis;
    return basis;
}

int clamp_index(int v, int hi) { return v < 0 ? 0 : (v > hi ? hi : v); }

} // namespace

int zigzag_index(int u, int v) { return zigzag_tables().index[u * 8 + v]; }

std::pair<int, int> zigzag_freq(int z) { return zigzag_tables().freq[z]; }

ImageYCbCr rgb_to_ycbcr(const ImageRGB& img) {
    ImageYCbCr out(img.height, img.width);
    const std::uint8_t* p = img.data.data();
    const std::size_t n = static_cast<std::size_t>(img.height) * img.width;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = p[3 * i + 0];
        const double g = p[3 * i + 1];
        const double b = p[3 * i + 2];
        out.planes[0].data[i] = 0.299 * r + 0.587 * g + 0.114 * b;
        out.planes[1].data[i] = 128.0 - 0.168736 * r - 0.331264 * g + 0.5 * b;
        out.planes[2].data[i] = 128.0 + 0.5 * r - 0.418688 * g - 0.081312 * b;
    }
    return out;
}

ImageRGB ycbcr_to_rgb(const ImageYCbCr& img) {
    ImageRGB out(img.height, img.width);
    const std::size_t n = static_cast<std::size_t>(img.height) * img.width;
    auto quantize = [](double v) -> std::uint8_t {
        double r = std::floor(v + 0.5); // round half up
        if (r < 0.0) r = 0.0;
        if (r > 255.0) r = 255.0;
        return static_cast<std::uint8_t>(r);
    };
    for (std::size_t i = 0; i < n; ++i) {
        const double y = img.planes[0].data[i];
        const double cb = img.planes[1].data[i] - 128.0;
        const double cr = img.planes[2].data[i] - 128.0;
        out.data[3 * i + 0] = quantize(y + 1.402 * cr);
        out.data[3 * i + 1] = quantize(y - 0.344136 * cb - 0.714136 * cr);
        out.data[3 * i + 2] = quantize(y + 1.772 * cb);
    }
    return out;
}

Plane bilinear_resize(const Plane& plane, int out_h, int out_w) {
    if (plane.height <= 0 || plane.width <= 0)
        throw ShapeError("bilinear_resize: empty input plane");
    if (out_h <= 0 || out_w <= 0)
        throw ShapeError("bilinear_resize: non-positive output size");

    Plane out(out_h, out_w);
    const double sy = static_cast<double>(plane.height) / out_h;
    const double sx = static_cast<double>(plane.width) / out_w;
    for (int i = 0; i < out_h; ++i) {
        double fy = (i + 0.5) * sy - 0.5;
        int y0 = static_cast<int>(std::floor(fy));
        double wy = fy - y0;
        int y0c = clamp_index(y0, plane.height - 1);
        int y1c = clamp_index(y0 + 1, plane.height - 1);
        for (int j = 0; j < out_w; ++j) {
            double fx = (j + 0.5) * sx - 0.5;
            int x0 = static_cast<int>(std::floor(fx));
            double wx = fx - x0;
            int x0c = clamp_index(x0, plane.width - 1);
            int x1c = clamp_index(x0 + 1, plane.width - 1);
            double top = plane.at(y0c, x0c) * (1.0 - wx) + plane.at(y0c, x1c) * wx;
            double bot = plane.at(y1c, x0c) * (1.0 - wx) + plane.at(y1c, x1c) * wx;
            out.at(i, j) = top * (1.0 - wy) + bot * wy;
        }
    }
    return out;
}

Plane bilinear_upsample(const Plane& plane, int factor) {
    if (factor != 8)
        throw std::invalid_argument("bilinear_upsample: only factor 8 is supported");
    return bilinear_resize(plane, plane.height * 8, plane.width * 8);
}

ImageYCbCr upsample8(const ImageYCbCr& img) {
    ImageYCbCr out;
    out.height = img.height * 8;
    out.width = img.width * 8;
    for (int p = 0; p < 3; ++p) out.planes[p] = bilinear_upsample(img.planes[p], 8);
    return out;
}

FrequencyTensor bdct(const ImageYCbCr& img) {
    if (img.height % kBlockSize != 0 || img.width % kBlockSize != 0)
        throw ShapeError("bdct: image dimensions must be divisible by 8");

    const int gh = img.height / kBlockSize;
    const int gw = img.width / kBlockSize;
    FrequencyTensor ft(gh, gw);
    const auto& basis = dct_basis();

    double block[8][8];
    double tmp[8][8];
    double coef[8][8];
    for (int comp = 0; comp < kComponents; ++comp) {
        const Plane& plane = img.planes[comp];
        for (int br = 0; br < gh; ++br) {
            for (int bc = 0; bc < gw; ++bc) {
                for (int y = 0; y < 8; ++y)
                    for (int x = 0; x < 8; ++x)
                        block[y][x] = plane.at(br * 8 + y, bc * 8 + x) - 128.0;
                // separable transform: coef = B * block * B^T
                for (int u = 0; u < 8; ++u)
                    for (int x = 0; x < 8; ++x) {
                        double s = 0.0;
                        for (int y = 0; y < 8; ++y) s += basis.b[u][y] * block[y][x];
                        tmp[u][x] = s;
                    }
                for (int u = 0; u < 8; ++u)
                    for (int v = 0; v < 8; ++v) {
                        double s = 0.0;
                        for (int x = 0; x < 8; ++x) s += tmp[u][x] * basis.b[v][x];
                        coef[u][v] = s;
                    }
                for (int u = 0; u < 8; ++u)
                    for (int v = 0; v < 8; ++v)
                        ft.at(channel_id(comp, zigzag_index(u, v)), br, bc) = coef[u][v];
            }
        }
    }
    return ft;
}

ImageYCbCr ibdct(const FrequencyTensor& ft) {
    ImageYCbCr img(ft.grid_h * kBlockSize, ft.grid_w * kBlockSize);
    const auto& basis = dct_basis();

    double coef[8][8];
    double tmp[8][8];
    for (int comp = 0; comp < kComponents; ++comp) {
        Plane& plane = img.planes[comp];
        for (int br = 0; br < ft.grid_h; ++br) {
            for (int bc = 0; bc < ft.grid_w; ++bc) {
                for (int u = 0; u < 8; ++u)
                    for (int v = 0; v < 8; ++v)
                        coef[u][v] = ft.at(channel_id(comp, zigzag_index(u, v)), br, bc);
                // block = B^T * coef * B
                for (int y = 0; y < 8; ++y)
                    for (int v = 0; v < 8; ++v) {
                        double s = 0.0;
                        for (int u = 0; u < 8; ++u) s += basis.b[u][y] * coef[u][v];
                        tmp[y][v] = s;
                    }
                for (int y = 0; y < 8; ++y)
                    for (int x = 0; x < 8; ++x) {
                        double s = 0.0;
                        for (int v = 0; v < 8; ++v) s += tmp[y][v] * basis.b[v][x];
                        plane.at(br * 8 + y, bc * 8 + x) = s + 128.0;
                    }
            }
        }
    }
    return img;
}

EnergyReport channel_energy(const FrequencyTensor& ft) {
    EnergyReport report;
    const std::size_t n = ft.plane_size();
    for (int c = 0; c < kFreqChannels; ++c) {
        const double* p = ft.channel(c);
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) acc += std::abs(p[i]);
        report.energy[c] = n ? acc / static_cast<double>(n) : 0.0;
    }
    for (int comp = 0; comp < kComponents; ++comp) {
        auto& rank = report.ranking[comp];
        std::iota(rank.begin(), rank.end(), comp * kFreqPerComponent);
        std::stable_sort(rank.begin(), rank.end(), [&](int a, int b) {
            if (report.energy[a] != report.energy[b]) return report.energy[a] > report.energy[b];
            return a < b;
        });
    }
    return report;
}

} // namespace duet
