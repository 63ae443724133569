#include <ddec/geometry.hpp>

#include <string>

namespace ddec {

namespace {

constexpr double kMaxRasterCoordinate = 1 << 24;

} // namespace

std::optional<Circle> try_circle_from_points(Pixel pi, Pixel pj, Pixel pk) noexcept
{
    const std::int64_t xi = pi.x, yi = pi.y;
    const std::int64_t xj = pj.x, yj = pj.y;
    const std::int64_t xk = pk.x, yk = pk.y;

    // Exact integer denominator; zero for collinear or coincident points.
    const std::int64_t cross = (xj - xi) * (yk - yi) - (xk - xi) * (yj - yi);
    if (cross == 0)
        return std::nullopt;

    const std::int64_t di = xi * xi + yi * yi;
    const std::int64_t dj = xj * xj + yj * yj - di;
    const std::int64_t dk = xk * xk + yk * yk - di;

    const std::int64_t det_a = dj * 2 * (yk - yi) - dk * 2 * (yj - yi);
    const std::int64_t det_b = 2 * (xj - xi) * dk - 2 * (xk - xi) * dj;
    const double denom = 4.0 * static_cast<double>(cross);

    Circle c;
    c.x0 = static_cast<double>(det_a) / denom;
    c.y0 = static_cast<double>(det_b) / denom;
    c.r = std::hypot(c.x0 - static_cast<double>(xi), c.y0 - static_cast<double>(yi));
    return c;
}

Circle circle_from_points(Pixel pi, Pixel pj, Pixel pk)
{
    if (auto c = try_circle_from_points(pi, pj, pk))
        return *c;
    throw DegenerateError("circle_from_points: points are collinear or coincident");
}

Circle candidate_to_circle(std::int64_t i, std::int64_t j, std::int64_t k, const EdgeMap& edges)
{
    const auto np = static_cast<std::int64_t>(edges.np());
    for (const std::int64_t idx : {i, j, k}) {
        if (idx < 1 || idx > np)
            throw IndexOutOfRange("candidate index " + std::to_string(idx) + " outside [1, " + std::to_string(np) + "]");
    }
    const auto pts = edges.points();
    return circle_from_points(pts[i - 1], pts[j - 1], pts[k - 1]);
}

std::size_t TestPointSet::inside_count() const
{
    std::size_t n = 0;
    for (const bool b : inside)
        n += b ? 1 : 0;
    return n;
}

RasterCircle to_raster(const Circle& c)
{
    return {static_cast<int>(std::lround(c.x0)), static_cast<int>(std::lround(c.y0)), static_cast<int>(std::lround(c.r))};
}

TestPointSet rasterize_circle(const Circle& c, int width, int height)
{
    if (!std::isfinite(c.x0) || !std::isfinite(c.y0) || !std::isfinite(c.r))
        throw std::domain_error("rasterize_circle: non-finite circle parameters");
    if (std::lround(c.r) < 1)
        throw RadiusTooSmall("rasterize_circle: rounded radius must be at least 1");
    if (std::abs(c.x0) > kMaxRasterCoordinate || std::abs(c.y0) > kMaxRasterCoordinate || c.r > kMaxRasterCoordinate)
        throw std::domain_error("rasterize_circle: circle too large to rasterize");
    const RasterCircle rc = to_raster(c);
    TestPointSet s;
    s.points.reserve(static_cast<std::size_t>(8 * rc.r));
    s.inside.reserve(static_cast<std::size_t>(8 * rc.r));
    for_each_mca_point(rc.cx, rc.cy, rc.r, [&](int x, int y) {
        s.points.push_back({x, y});
        s.inside.push_back(x >= 0 && y >= 0 && x < width && y < height);
    });
    return s;
}

} // namespace ddec
