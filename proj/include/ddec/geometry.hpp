#pragma once

#include <ddec/edge_pipeline.hpp>

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace ddec {

struct Circle {
    double x0 = 0.0;
    double y0 = 0.0;
    double r = 0.0;

    friend bool operator==(const Circle&, const Circle&) = default;
};

/// Three coincident or collinear points; no circle passes through them.
class DegenerateError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class IndexOutOfRange : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

class RadiusTooSmall : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Circumcircle of three integer points. The center is the Cramer-rule
/// solution of the two perpendicular-bisector equations, the radius the
/// distance from the center to pi. Returns nullopt when the points are
/// collinear or two of them coincide (the integer denominator is zero).
std::optional<Circle> try_circle_from_points(Pixel pi, Pixel pj, Pixel pk) noexcept;

/// Throwing form of try_circle_from_points.
Circle circle_from_points(Pixel pi, Pixel pj, Pixel pk);

/// Maps a 1-based index triplet into edges.points() to its circle.
/// Throws IndexOutOfRange for an index outside [1, np] and DegenerateError
/// for collinear/coincident points.
Circle candidate_to_circle(std::int64_t i, std::int64_t j, std::int64_t k, const EdgeMap& edges);

/// Rasterized circumference of a circle, as produced by the midpoint circle
/// algorithm on the rounded center and radius.
struct TestPointSet {
    std::vector<Pixel> points;
    std::vector<bool> inside;

    std::size_t ns() const { return points.size(); }
    std::size_t inside_count() const;
};

/// Integer center and radius used for rasterization (round half away from zero).
struct RasterCircle {
    int cx = 0;
    int cy = 0;
    int r = 0;
};

RasterCircle to_raster(const Circle& c);

/// Visits every point of the midpoint-circle raster of (cx, cy, r) exactly once.
///
/// The first octant is walked from (r, 0) towards the diagonal with the
/// integer decision variable; each octant point is reflected 8 ways, with the
/// axis and diagonal reflections emitted once so that the visited points are
/// pairwise distinct.
template <typename Fn>
void for_each_mca_point(int cx, int cy, int r, Fn&& fn)
{
    int x = r;
    int y = 0;
    int decision = 1 - r;
    while (x >= y) {
        if (y == 0) {
            fn(cx + x, cy);
            fn(cx, cy + x);
            fn(cx - x, cy);
            fn(cx, cy - x);
        }
        else if (x == y) {
            fn(cx + x, cy + y);
            fn(cx - x, cy + y);
            fn(cx - x, cy - y);
            fn(cx + x, cy - y);
        }
        else {
            fn(cx + x, cy + y);
            fn(cx + y, cy + x);
            fn(cx - y, cy + x);
            fn(cx - x, cy + y);
            fn(cx - x, cy - y);
            fn(cx - y, cy - x);
            fn(cx + y, cy - x);
            fn(cx + x, cy - y);
        }
        ++y;
        if (decision < 0) {
            decision += 2 * y + 1;
        }
        else {
            --x;
            decision += 2 * (y - x) + 1;
        }
    }
}

/// Test point set S for a circle in a width x height image. Points outside
/// the image are kept and flagged not-inside. Throws RadiusTooSmall when the
/// rounded radius is below 1.
TestPointSet rasterize_circle(const Circle& c, int width, int height);

} // namespace ddec
