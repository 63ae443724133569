// Synthetic scene rendering for the detection experiments.

#include <ddec/evaluation.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <tuple>
#include <string>

namespace ddec {

double error_score(const Circle& truth, const Circle& detected, const ScoreWeights& w)
{
    return w.eta * (std::abs(truth.x0 - detected.x0) + std::abs(truth.y0 - detected.y0)) + w.mu * std::abs(truth.r - detected.r);
}

std::vector<Pixel> circle_pixels(const CircleShape& shape)
{
    const RasterCircle rc = to_raster(shape.circle);
    std::vector<Pixel> out;
    const bool full = shape.sweep_deg >= 360.0;
    for_each_mca_point(rc.cx, rc.cy, rc.r, [&](int x, int y) {
        if (!full) {
            double a = std::atan2(static_cast<double>(y - rc.cy), static_cast<double>(x - rc.cx)) * 180.0 / std::numbers::pi;
            double rel = std::fmod(a - shape.start_deg, 360.0);
            if (rel < 0)
                rel += 360.0;
            if (rel > shape.sweep_deg)
                return;
        }
        out.push_back({x, y});
    });
    return out;
}

std::vector<Pixel> line_pixels(Pixel a, Pixel b)
{
    std::vector<Pixel> out;
    const int dx = std::abs(b.x - a.x);
    const int dy = -std::abs(b.y - a.y);
    const int sx = a.x < b.x ? 1 : -1;
    const int sy = a.y < b.y ? 1 : -1;
    int err = dx + dy;
    int x = a.x;
    int y = a.y;
    while (true) {
        out.push_back({x, y});
        if (x == b.x && y == b.y)
            break;
        const int e2 = 2 * err;
        if (e2 >= dy) {
            err += dy;
            x += sx;
        }
        if (e2 <= dx) {
            err += dx;
            y += sy;
        }
    }
    return out;
}

std::vector<Pixel> polygon_pixels(std::span<const Pixel> vertices)
{
    std::vector<Pixel> out;
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        const auto seg = line_pixels(vertices[i], vertices[(i + 1) % vertices.size()]);
        out.insert(out.end(), seg.begin(), seg.end());
    }
    std::sort(out.begin(), out.end(), [](Pixel p, Pixel q) { return std::tie(p.y, p.x) < std::tie(q.y, q.x); });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<Pixel> ellipse_pixels(double cx, double cy, double a, double b)
{
    std::set<std::pair<int, int>> seen;
    std::vector<Pixel> out;
    const int steps = std::max(64, static_cast<int>(16.0 * (a + b)));
    for (int s = 0; s < steps; ++s) {
        const double t = 2.0 * std::numbers::pi * s / steps;
        const int x = static_cast<int>(std::lround(cx + a * std::cos(t)));
        const int y = static_cast<int>(std::lround(cy + b * std::sin(t)));
        if (seen.emplace(y, x).second)
            out.push_back({x, y});
    }
    return out;
}

namespace {

void check_placement(const CircleShape& shape, const SceneSpec& spec)
{
    const Circle& c = shape.circle;
    const double m = spec.margin;
    if (!(c.r >= 1.0) || c.x0 - c.r < m || c.y0 - c.r < m || c.x0 + c.r > spec.width - 1 - m || c.y0 + c.r > spec.height - 1 - m) {
        throw PlacementError("circle (" + std::to_string(c.x0) + ", " + std::to_string(c.y0) + ", " + std::to_string(c.r)
            + ") does not fit a " + std::to_string(spec.width) + "x" + std::to_string(spec.height) + " image with margin "
            + std::to_string(spec.margin));
    }
}

} // namespace

SyntheticScene generate_synthetic(const SceneSpec& spec, Rng& rng)
{
    if (spec.width < 1 || spec.height < 1)
        throw PlacementError("image dimensions must be positive");
    if (!(spec.noise_density >= 0.0 && spec.noise_density <= 1.0))
        throw std::invalid_argument("noise_density must lie in [0, 1]");

    const int w = spec.width;
    const int h = spec.height;
    const auto idx = [w](int x, int y) { return static_cast<std::size_t>(y) * w + x; };

    GroundTruth truth{w, h, {}};
    GrayImage image(w, h, 0);
    std::vector<std::uint8_t> shape_mask(static_cast<std::size_t>(w) * h, 0);

    for (const auto& shape : spec.circles) {
        check_placement(shape, spec);
        truth.circles.push_back(shape.circle);
        const RasterCircle rc = to_raster(shape.circle);
        if (shape.sweep_deg >= 360.0) {
            for (int y = std::max(0, rc.cy - rc.r); y <= std::min(h - 1, rc.cy + rc.r); ++y) {
                for (int x = std::max(0, rc.cx - rc.r); x <= std::min(w - 1, rc.cx + rc.r); ++x) {
                    if ((x - rc.cx) * (x - rc.cx) + (y - rc.cy) * (y - rc.cy) <= rc.r * rc.r)
                        image.set(x, y, 255);
                }
            }
        }
        for (const auto& p : circle_pixels(shape)) {
            shape_mask[idx(p.x, p.y)] = 1;
            image.set(p.x, p.y, 255);
        }
    }
    for (const auto& p : spec.distractors) {
        if (image.contains(p.x, p.y)) {
            shape_mask[idx(p.x, p.y)] = 1;
            image.set(p.x, p.y, 255);
        }
    }

    std::vector<std::uint8_t> edge_mask = shape_mask;
    if (spec.noise_density > 0.0) {
        std::vector<std::size_t> background;
        for (std::size_t i = 0; i < shape_mask.size(); ++i) {
            if (!shape_mask[i])
                background.push_back(i);
        }
        const auto salt = std::min(background.size(), static_cast<std::size_t>(std::llround(spec.noise_density * w * h)));
        // Partial Fisher-Yates: the first `salt` entries are a uniform sample.
        for (std::size_t i = 0; i < salt; ++i) {
            const std::size_t j = i + rng.index(background.size() - i);
            std::swap(background[i], background[j]);
            edge_mask[background[i]] = 1;
        }
        for (std::size_t i = 0; i < shape_mask.size(); ++i) {
            if (shape_mask[i] && rng.bernoulli(spec.noise_density))
                edge_mask[i] = 0;
        }
    }

    return {std::move(image), EdgeMap(w, h, std::move(edge_mask)), std::move(truth)};
}

std::vector<Circle> random_circles(int width, int height, std::size_t count, int r_min, int r_max, Rng& rng, int margin)
{
    if (r_min < 1 || r_max < r_min)
        throw PlacementError("invalid radius range");
    std::vector<Circle> out;
    constexpr int kAttempts = 10000;
    for (std::size_t n = 0; n < count; ++n) {
        bool placed = false;
        for (int attempt = 0; attempt < kAttempts && !placed; ++attempt) {
            const int r = static_cast<int>(rng.uniform_int(r_min, r_max));
            const int lo_x = r + margin;
            const int hi_x = width - 1 - r - margin;
            const int lo_y = r + margin;
            const int hi_y = height - 1 - r - margin;
            if (hi_x < lo_x || hi_y < lo_y)
                continue;
            const Circle c{static_cast<double>(rng.uniform_int(lo_x, hi_x)), static_cast<double>(rng.uniform_int(lo_y, hi_y)), static_cast<double>(r)};
            const bool clear = std::all_of(out.begin(), out.end(), [&](const Circle& o) {
                return std::hypot(o.x0 - c.x0, o.y0 - c.y0) > o.r + c.r + margin;
            });
            if (clear) {
                out.push_back(c);
                placed = true;
            }
        }
        if (!placed)
            throw PlacementError("could not place " + std::to_string(count) + " non-overlapping circles with radius in ["
                + std::to_string(r_min) + ", " + std::to_string(r_max) + "] in a " + std::to_string(width) + "x"
                + std::to_string(height) + " image");
    }
    return out;
}

} // namespace ddec
