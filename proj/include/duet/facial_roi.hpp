#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "duet/attention_transfer.hpp"

namespace duet {

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

// Landmark coordinates live in the 112x112 reference image space.
using LandmarkSet = std::vector<Point2>;
using Polygon = std::vector<Point2>; // counterclockwise, in y-down raster coordinates

inline constexpr double kLandmarkSpace = 112.0;

struct RoiMask {
    int height = 0;
    int width = 0;
    std::vector<std::uint8_t> data;

    RoiMask() = default;
    RoiMask(int h, int w) : height(h), width(w), data(static_cast<std::size_t>(h) * w, 0) {}

    bool at(int r, int c) const { return data[static_cast<std::size_t>(r) * width + c] != 0; }
    void set(int r, int c, bool v) { data[static_cast<std::size_t>(r) * width + c] = v ? 1 : 0; }
};

// Monotone-chain convex hull; vertices are a subset of the input points,
// counterclockwise, collinear boundary points excluded. Throws GeometryError
// for fewer than 3 points or an all-collinear set.
Polygon convex_hull(const LandmarkSet& points);

// Pixel (r,c) is true iff its center (c+0.5, r+0.5) lies inside or on the
// polygon. Coordinates are taken as raster coordinates of the h x w grid.
RoiMask rasterize_polygon(const Polygon& poly, int h, int w);

// Scales the polygon from 112x112 reference space by (w/112, h/112), then
// rasterizes.
RoiMask rasterize_hull(const Polygon& poly, int h, int w);

// Element-wise overlay with the boolean ROI, then min-max renormalization
// over the surviving (ROI-true) positions; everything outside the ROI is
// zero, and an all-zero result stays all-zero.
FeatureMask refine_mask(const FeatureMask& mask, const RoiMask& roi);

// Sidecar format: a flat whitespace-separated list of 2N reals, x,y
// interleaved. The 98-point WFLW convention fits, but any N >= 3 works.
LandmarkSet load_landmarks(const std::string& path);

// Test stand-in for a landmark detector: a 32-point ellipse centered at
// (56,58) with radii (38,48).
LandmarkSet synthetic_face_landmarks();

} // namespace duet
