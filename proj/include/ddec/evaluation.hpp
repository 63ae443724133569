#pragma once

#include <ddec/detector.hpp>
#include <ddec/edge_pipeline.hpp>
#include <ddec/geometry.hpp>
#include <ddec/rng.hpp>

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ddec {

/// A requested shape does not fit the image.
class PlacementError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct GroundTruth {
    int width = 0;
    int height = 0;
    std::vector<Circle> circles;
};

struct ScoreWeights {
    double eta = 0.05;
    double mu = 0.1;
};

/// eta * (|dx0| + |dy0|) + mu * |dr|
double error_score(const Circle& truth, const Circle& detected, const ScoreWeights& w = {});

inline bool is_success(double es) { return es < 1.0; }

// ---------------------------------------------------------------------------
// Synthetic scenes

/// A circle drawn fully, or only the arc from start_deg sweeping sweep_deg
/// (angles measured from +x towards +y, i.e. clockwise on screen).
struct CircleShape {
    Circle circle;
    double start_deg = 0.0;
    double sweep_deg = 360.0;
};

struct SceneSpec {
    int width = 200;
    int height = 200;
    /// Ground-truth circles; each must keep center margin >= r + margin.
    std::vector<CircleShape> circles;
    /// Non-circular distractor pixels (polygons, segments, ellipses).
    std::vector<Pixel> distractors;
    double noise_density = 0.0;
    int margin = 5;
};

struct SyntheticScene {
    GrayImage image;
    EdgeMap edges;
    GroundTruth truth;
};

/// Midpoint raster of a circle (integer center/radius) clipped to an arc.
std::vector<Pixel> circle_pixels(const CircleShape& shape);

/// Bresenham segment, both endpoints included.
std::vector<Pixel> line_pixels(Pixel a, Pixel b);

/// Closed polygon outline.
std::vector<Pixel> polygon_pixels(std::span<const Pixel> vertices);

/// Axis-aligned ellipse outline by dense angular sampling, deduplicated.
std::vector<Pixel> ellipse_pixels(double cx, double cy, double a, double b);

/// Draws the scene. Edge pixels are the union of the circles' rasters and the
/// distractors; with noise density p, round(p * width * height) distinct
/// non-shape pixels are switched on (salt) and each shape pixel is dropped
/// with probability p (pepper). The gray image is the clean render: filled
/// disks plus distractor outlines at 255 on black.
SyntheticScene generate_synthetic(const SceneSpec& spec, Rng& rng);

/// count non-overlapping circles with integer centers and radii in
/// [r_min, r_max], each center at least r + margin from every border.
std::vector<Circle> random_circles(int width, int height, std::size_t count, int r_min, int r_max, Rng& rng, int margin = 5);

// ---------------------------------------------------------------------------
// Benchmark

struct BenchCase {
    std::string name;
    EdgeMap edges;
    GroundTruth truth;
};

struct BenchRow {
    std::string image;
    std::size_t runs = 0;
    double mean_time_s = 0.0;
    double std_time_s = 0.0;
    double success_rate_pct = 0.0;
    double mean_es = 0.0;
    double std_es = 0.0;
};

struct BenchReport {
    std::vector<BenchRow> rows;
};

struct Match {
    std::size_t truth_index;
    std::size_t detection_index;
    double es;
};

/// Greedy assignment: repeatedly pair the remaining (truth, detection) with
/// the smallest Es, without replacement.
std::vector<Match> match_detections(std::span<const Circle> truth, std::span<const Detection> detections, const ScoreWeights& w = {});

enum class Timing { wall, off };

/// Runs every case `runs` times, run r using seeds[r]. Single-circle truths use
/// detect_circle; k-circle truths use detect_multiple with max_circles = k.
/// A run succeeds when every truth circle is matched with Es < 1; Es
/// statistics are over matched pairs. Standard deviations are sample
/// deviations (0 for one run). With Timing::off the time columns are 0.
BenchReport run_benchmark(std::span<const BenchCase> suite, std::size_t runs, const DetectorConfig& cfg,
    std::span<const Rng::seed_type> seeds, const ScoreWeights& w = {}, Timing timing = Timing::wall);

std::string to_csv(const BenchReport& report);
std::string to_json(const BenchReport& report);

/// Ground-truth JSON: {"width", "height", "circles": [{"x0", "y0", "r"}]}.
std::string truth_to_json(const GroundTruth& truth);
GroundTruth truth_from_json(const std::string& text);

} // namespace ddec
