#pragma once

#include <ddec/dde.hpp>
#include <ddec/edge_pipeline.hpp>
#include <ddec/geometry.hpp>

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace ddec {

/// Fewer than three edge points: no candidate circle can be formed.
class InsufficientEdges : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// 1-based indices (i, j, k) into EdgeMap::points().
using Candidate = std::array<std::int64_t, 3>;

struct DetectorConfig {
    /// Odd side length of the square neighbourhood searched around each test point.
    int window = 5;
    double min_radius = 3.0;
    /// Candidates with a larger radius are penalized; 0 selects max(width, height).
    double max_radius = 0.0;
    std::size_t max_circles = 1;
    double completeness_threshold = 0.7;
    /// Edge pixels within this distance of a detected circumference are erased.
    /// Covers the window half-width plus raster error, so a found circle
    /// does not leave a ring of hits behind for the next search.
    double mask_tolerance = 3.0;
    DdeConfig dde = [] {
        DdeConfig c;
        c.target_objective = 0.0;
        return c;
    }();

    void validate() const;
};

struct Detection {
    Circle circle;
    Candidate candidate{};
    double objective = 0.0;
    double hit_ratio = 0.0;
    std::size_t generations = 0;
    double elapsed = 0.0;

    /// False when every candidate was penalized and no circle was decoded.
    bool feasible() const { return objective <= 1.0; }
};

/// 1 iff an edge pixel lies in the window x window square centered at (x, y),
/// clipped to the image.
int edge_hit(const EdgeMap& edges, int x, int y, int window);

/// Objective J over one edge map. Precomputes the window dilation of the
/// edge mask so each test point is an O(1) lookup. Immutable after
/// construction and safe to call concurrently.
class CircleObjective {
public:
    CircleObjective(const EdgeMap& edges, const DetectorConfig& cfg);

    /// J for an index triplet, or the penalty cost for out-of-range indices,
    /// degenerate triplets and radii outside [min_radius, max_radius].
    double operator()(std::span<const std::int64_t> candidate) const;

    /// J for an explicit circle (penalty when its radius is out of bounds).
    double evaluate(const Circle& c) const;

    const EdgeMap& edges() const { return _edges; }

private:
    const EdgeMap& _edges;
    double _min_radius;
    double _max_radius;
    double _penalty;
    std::vector<std::uint8_t> _dilated;
};

/// J(C) = 1 - hits / Ns over the midpoint raster of the candidate's circle.
double objective_j(const Candidate& candidate, const EdgeMap& edges, const DetectorConfig& cfg);

/// Single circle search; the engine's search space is [1, np].
Detection detect_circle(const EdgeMap& edges, const DetectorConfig& cfg, Rng& rng);

/// Copy of edges without the pixels within tol of the circle's circumference.
EdgeMap mask_detected(const EdgeMap& edges, const Circle& c, double tol);

/// Repeated detect-and-mask, keeping detections whose hit ratio reaches the
/// completeness threshold and stopping at the first one that does not.
std::vector<Detection> detect_multiple(const EdgeMap& edges, const DetectorConfig& cfg, Rng& rng);

/// Same loop as detect_multiple without completeness rejection: the best
/// max_circles circles in discovery order.
std::vector<Detection> approximate_shape(const EdgeMap& edges, const DetectorConfig& cfg, Rng& rng);

} // namespace ddec
