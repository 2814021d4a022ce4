#include "duet/facial_roi.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include "duet/errors.hpp"

namespace duet {

namespace {

double cross(const Point2& o, const Point2& a, const Point2& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

constexpr double kEdgeEps = 1e-9;

bool inside_convex(const Polygon& poly, double px, double py) {
    // CCW polygon: interior and boundary points lie left of (or on) every edge.
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Point2& a = poly[i];
        const Point2& b = poly[(i + 1) % poly.size()];
        if (cross(a, b, {px, py}) < -kEdgeEps) return false;
    }
    return true;
}

} // namespace

Polygon convex_hull(const LandmarkSet& points) {
    if (points.size() < 3)
        throw GeometryError("convex_hull: need at least 3 points");
    for (const Point2& p : points)
        if (!std::isfinite(p.x) || !std::isfinite(p.y))
            throw GeometryError("convex_hull: non-finite coordinate");

    std::vector<Point2> pts = points;
    std::sort(pts.begin(), pts.end(), [](const Point2& a, const Point2& b) {
        return a.x != b.x ? a.x < b.x : a.y < b.y;
    });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](const Point2& a, const Point2& b) {
                              return a.x == b.x && a.y == b.y;
                          }),
              pts.end());
    if (pts.size() < 3) throw GeometryError("convex_hull: degenerate point set");

    const std::size_t n = pts.size();
    std::vector<Point2> hull(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) { // lower chain
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
        hull[k++] = pts[i];
    }
    const std::size_t lower = k + 1;
    for (std::size_t i = n - 1; i-- > 0;) { // upper chain
        while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    if (hull.size() < 3) throw GeometryError("convex_hull: all points collinear");
    return hull;
}

RoiMask rasterize_polygon(const Polygon& poly, int h, int w) {
    if (h <= 0 || w <= 0) throw ShapeError("rasterize_polygon: empty raster");
    if (poly.size() < 3) throw GeometryError("rasterize_polygon: polygon needs 3 vertices");

    // Restrict the per-pixel test to the polygon's bounding box.
    double min_x = std::numeric_limits<double>::infinity(), max_x = -min_x;
    double min_y = min_x, max_y = -min_x;
    for (const Point2& p : poly) {
        min_x = std::min(min_x, p.x);
        max_x = std::max(max_x, p.x);
        min_y = std::min(min_y, p.y);
        max_y = std::max(max_y, p.y);
    }
    const int r0 = std::max(0, static_cast<int>(std::floor(min_y - 0.5)));
    const int r1 = std::min(h - 1, static_cast<int>(std::ceil(max_y)));
    const int c0 = std::max(0, static_cast<int>(std::floor(min_x - 0.5)));
    const int c1 = std::min(w - 1, static_cast<int>(std::ceil(max_x)));

    RoiMask mask(h, w);
    for (int r = r0; r <= r1; ++r)
        for (int c = c0; c <= c1; ++c)
            if (inside_convex(poly, c + 0.5, r + 0.5)) mask.set(r, c, true);
    return mask;
}

RoiMask rasterize_hull(const Polygon& poly, int h, int w) {
    Polygon scaled;
    scaled.reserve(poly.size());
    const double sx = w / kLandmarkSpace;
    const double sy = h / kLandmarkSpace;
    for (const Point2& p : poly) scaled.push_back({p.x * sx, p.y * sy});
    return rasterize_polygon(scaled, h, w);
}

FeatureMask refine_mask(const FeatureMask& mask, const RoiMask& roi) {
    if (mask.height != roi.height || mask.width != roi.width)
        throw ShapeError("refine_mask: roi size does not match mask size");

    FeatureMask out(mask.height, mask.width);
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < mask.data.size(); ++i) {
        if (!roi.data[i]) continue;
        out.data[i] = mask.data[i];
        lo = std::min(lo, out.data[i]);
        hi = std::max(hi, out.data[i]);
    }
    if (!(hi > lo)) {
        // No surviving pixels, or a constant overlay: no attention left.
        std::fill(out.data.begin(), out.data.end(), 0.0);
        return out;
    }
    const double inv = 1.0 / (hi - lo);
    for (std::size_t i = 0; i < out.data.size(); ++i)
        if (roi.data[i]) out.data[i] = (out.data[i] - lo) * inv;
    return out;
}

LandmarkSet load_landmarks(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("landmarks: cannot open " + path);
    std::vector<double> values;
    double v;
    while (in >> v) values.push_back(v);
    if (!in.eof()) throw IoError("landmarks: non-numeric data in " + path);
    if (values.size() < 6 || values.size() % 2 != 0)
        throw IoError("landmarks: need an even count of at least 6 values in " + path);

    LandmarkSet points;
    points.reserve(values.size() / 2);
    for (std::size_t i = 0; i < values.size(); i += 2)
        points.push_back({values[i], values[i + 1]});
    return points;
}

LandmarkSet synthetic_face_landmarks() {
    LandmarkSet points;
    const double pi = std::acos(-1.0);
    for (int i = 0; i < 32; ++i) {
        const double t = 2.0 * pi * i / 32.0;
        points.push_back({56.0 + 38.0 * std::cos(t), 58.0 + 48.0 * std::sin(t)});
    }
    return points;
}

} // namespace duet
