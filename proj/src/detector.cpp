#include <ddec/detector.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>

namespace ddec {

void DetectorConfig::validate() const
{
    if (window < 1 || window % 2 == 0)
        throw ConfigError("DetectorConfig: window must be odd and at least 1");
    if (!(min_radius >= 3.0))
        throw ConfigError("DetectorConfig: min_radius must be at least 3");
    if (max_radius != 0.0 && !(max_radius >= min_radius))
        throw ConfigError("DetectorConfig: max_radius must be 0 (auto) or at least min_radius");
    if (max_circles < 1)
        throw ConfigError("DetectorConfig: max_circles must be at least 1");
    if (!(completeness_threshold >= 0.0 && completeness_threshold <= 1.0))
        throw ConfigError("DetectorConfig: completeness_threshold must lie in [0, 1]");
    if (!(mask_tolerance >= 0.0))
        throw ConfigError("DetectorConfig: mask_tolerance must be non-negative");
    if (!(dde.penalty_cost > 1.0))
        throw ConfigError("DetectorConfig: penalty_cost must exceed 1 (the largest feasible J)");
    dde.validate();
}

int edge_hit(const EdgeMap& edges, int x, int y, int window)
{
    const int half = window / 2;
    const int x_lo = std::max(0, x - half);
    const int x_hi = std::min(edges.width() - 1, x + half);
    const int y_lo = std::max(0, y - half);
    const int y_hi = std::min(edges.height() - 1, y + half);
    for (int yy = y_lo; yy <= y_hi; ++yy) {
        for (int xx = x_lo; xx <= x_hi; ++xx) {
            if (edges.is_edge(xx, yy))
                return 1;
        }
    }
    return 0;
}

CircleObjective::CircleObjective(const EdgeMap& edges, const DetectorConfig& cfg)
    : _edges(edges)
    , _min_radius(cfg.min_radius)
    , _max_radius(cfg.max_radius > 0.0 ? cfg.max_radius : static_cast<double>(std::max(edges.width(), edges.height())))
    , _penalty(cfg.dde.penalty_cost)
{
    cfg.validate();
    const int w = edges.width();
    const int h = edges.height();
    const int half = cfg.window / 2;
    const auto mask = edges.mask();

    // Separable box dilation: horizontal pass, then vertical.
    std::vector<std::uint8_t> rows(mask.size(), 0);
    for (int y = 0; y < h; ++y) {
        int last_edge = -1'000'000;
        for (int x = 0; x < w + half; ++x) {
            if (x < w && mask[static_cast<std::size_t>(y) * w + x])
                last_edge = x;
            const int target = x - half;
            if (target >= 0 && target < w && last_edge >= target - half)
                rows[static_cast<std::size_t>(y) * w + target] = 1;
        }
    }
    _dilated.assign(mask.size(), 0);
    for (int x = 0; x < w; ++x) {
        int last_edge = -1'000'000;
        for (int y = 0; y < h + half; ++y) {
            if (y < h && rows[static_cast<std::size_t>(y) * w + x])
                last_edge = y;
            const int target = y - half;
            if (target >= 0 && target < h && last_edge >= target - half)
                _dilated[static_cast<std::size_t>(target) * w + x] = 1;
        }
    }
}

double CircleObjective::evaluate(const Circle& c) const
{
    if (!(c.r >= _min_radius && c.r <= _max_radius))
        return _penalty;
    const RasterCircle rc = to_raster(c);
    const int w = _edges.width();
    const int h = _edges.height();
    std::size_t ns = 0;
    std::size_t hits = 0;
    for_each_mca_point(rc.cx, rc.cy, rc.r, [&](int x, int y) {
        ++ns;
        // Off-image test points count in Ns and never hit.
        if (x >= 0 && y >= 0 && x < w && y < h)
            hits += _dilated[static_cast<std::size_t>(y) * w + x];
    });
    return 1.0 - static_cast<double>(hits) / static_cast<double>(ns);
}

double CircleObjective::operator()(std::span<const std::int64_t> candidate) const
{
    const auto np = static_cast<std::int64_t>(_edges.np());
    if (candidate.size() != 3)
        return _penalty;
    for (const auto idx : candidate) {
        if (idx < 1 || idx > np)
            return _penalty;
    }
    const auto pts = _edges.points();
    const auto c = try_circle_from_points(pts[candidate[0] - 1], pts[candidate[1] - 1], pts[candidate[2] - 1]);
    if (!c)
        return _penalty;
    return evaluate(*c);
}

double objective_j(const Candidate& candidate, const EdgeMap& edges, const DetectorConfig& cfg)
{
    return CircleObjective(edges, cfg)(candidate);
}

Detection detect_circle(const EdgeMap& edges, const DetectorConfig& cfg, Rng& rng)
{
    if (edges.np() < 3)
        throw InsufficientEdges("detect_circle: need at least 3 edge points, got " + std::to_string(edges.np()));
    const auto start = std::chrono::steady_clock::now();

    const CircleObjective objective(edges, cfg);
    DdeConfig dde = cfg.dde;
    dde.dim = 3;
    dde.lower_bound = 1;
    dde.upper_bound = static_cast<std::int64_t>(edges.np());

    const EvolutionResult res = evolve([&objective](std::span<const std::int64_t> v) { return objective(v); }, dde, rng);

    Detection d;
    std::copy(res.best.begin(), res.best.end(), d.candidate.begin());
    d.objective = res.best_objective;
    d.generations = res.generations_run;
    if (d.feasible()) {
        d.circle = candidate_to_circle(d.candidate[0], d.candidate[1], d.candidate[2], edges);
        d.hit_ratio = 1.0 - d.objective;
    }
    d.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return d;
}

EdgeMap mask_detected(const EdgeMap& edges, const Circle& c, double tol)
{
    std::vector<std::uint8_t> mask(edges.mask().begin(), edges.mask().end());
    for (const auto& p : edges.points()) {
        const double d = std::hypot(p.x - c.x0, p.y - c.y0);
        if (std::abs(d - c.r) <= tol)
            mask[static_cast<std::size_t>(p.y) * edges.width() + p.x] = 0;
    }
    return EdgeMap(edges.width(), edges.height(), std::move(mask));
}

namespace {

std::vector<Detection> detect_and_mask(const EdgeMap& edges, const DetectorConfig& cfg, Rng& rng, bool validate_completeness)
{
    cfg.validate();
    std::vector<Detection> found;
    EdgeMap current = edges;
    while (found.size() < cfg.max_circles && current.np() >= 3) {
        Detection d = detect_circle(current, cfg, rng);
        if (!d.feasible())
            break;
        if (validate_completeness && d.hit_ratio < cfg.completeness_threshold)
            break;
        current = mask_detected(current, d.circle, cfg.mask_tolerance);
        found.push_back(d);
    }
    return found;
}

} // namespace

std::vector<Detection> detect_multiple(const EdgeMap& edges, const DetectorConfig& cfg, Rng& rng)
{
    return detect_and_mask(edges, cfg, rng, true);
}

std::vector<Detection> approximate_shape(const EdgeMap& edges, const DetectorConfig& cfg, Rng& rng)
{
    return detect_and_mask(edges, cfg, rng, false);
}

} // namespace ddec
