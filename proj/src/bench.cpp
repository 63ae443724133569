#include <ddec/evaluation.hpp>

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>

namespace ddec {

std::vector<Match> match_detections(std::span<const Circle> truth, std::span<const Detection> detections, const ScoreWeights& w)
{
    std::vector<Match> candidates;
    for (std::size_t t = 0; t < truth.size(); ++t) {
        for (std::size_t d = 0; d < detections.size(); ++d) {
            if (detections[d].feasible())
                candidates.push_back({t, d, error_score(truth[t], detections[d].circle, w)});
        }
    }
    std::stable_sort(candidates.begin(), candidates.end(), [](const Match& a, const Match& b) { return a.es < b.es; });

    std::vector<bool> truth_used(truth.size(), false);
    std::vector<bool> det_used(detections.size(), false);
    std::vector<Match> out;
    for (const auto& m : candidates) {
        if (truth_used[m.truth_index] || det_used[m.detection_index])
            continue;
        truth_used[m.truth_index] = true;
        det_used[m.detection_index] = true;
        out.push_back(m);
    }
    return out;
}

namespace {

struct Stats {
    double mean = 0.0;
    double stddev = 0.0;
};

Stats stats(const std::vector<double>& v)
{
    Stats s;
    if (v.empty())
        return s;
    s.mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    if (v.size() > 1) {
        double acc = 0.0;
        for (const double x : v)
            acc += (x - s.mean) * (x - s.mean);
        s.stddev = std::sqrt(acc / static_cast<double>(v.size() - 1));
    }
    return s;
}

std::string fixed(double v, int digits)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
    return buf;
}

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (const char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + "\"";
}

} // namespace

BenchReport run_benchmark(std::span<const BenchCase> suite, std::size_t runs, const DetectorConfig& cfg,
    std::span<const Rng::seed_type> seeds, const ScoreWeights& w, Timing timing)
{
    if (runs < 1)
        throw std::invalid_argument("run_benchmark: runs must be at least 1");
    if (seeds.size() < runs)
        throw std::invalid_argument("run_benchmark: need one seed per run");

    BenchReport report;
    for (const auto& c : suite) {
        std::vector<double> times;
        std::vector<double> es_values;
        std::size_t successes = 0;
        for (std::size_t run = 0; run < runs; ++run) {
            Rng rng(seeds[run]);
            std::vector<Detection> dets;
            const auto start = std::chrono::steady_clock::now();
            if (c.edges.np() >= 3) {
                if (c.truth.circles.size() <= 1) {
                    Detection d = detect_circle(c.edges, cfg, rng);
                    if (d.feasible())
                        dets.push_back(d);
                }
                else {
                    DetectorConfig multi = cfg;
                    multi.max_circles = c.truth.circles.size();
                    dets = detect_multiple(c.edges, multi, rng);
                }
            }
            const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            times.push_back(timing == Timing::wall ? elapsed : 0.0);

            const auto matches = match_detections(c.truth.circles, dets, w);
            bool ok = !c.truth.circles.empty() && matches.size() == c.truth.circles.size();
            for (const auto& m : matches) {
                es_values.push_back(m.es);
                ok = ok && is_success(m.es);
            }
            successes += ok ? 1 : 0;
        }
        const Stats t = stats(times);
        const Stats e = stats(es_values);
        report.rows.push_back({c.name, runs, t.mean, t.stddev, 100.0 * static_cast<double>(successes) / static_cast<double>(runs), e.mean, e.stddev});
    }
    return report;
}

std::string to_csv(const BenchReport& report)
{
    std::string out = "image,runs,mean_time_s,std_time_s,success_rate_pct,mean_es,std_es\n";
    for (const auto& r : report.rows) {
        out += csv_field(r.image) + ',' + std::to_string(r.runs) + ',' + fixed(r.mean_time_s, 6) + ',' + fixed(r.std_time_s, 6) + ','
            + fixed(r.success_rate_pct, 2) + ',' + fixed(r.mean_es, 6) + ',' + fixed(r.std_es, 6) + '\n';
    }
    return out;
}

std::string to_json(const BenchReport& report)
{
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& r : report.rows) {
        rows.push_back({{"image", r.image}, {"runs", r.runs}, {"mean_time_s", r.mean_time_s}, {"std_time_s", r.std_time_s},
            {"success_rate_pct", r.success_rate_pct}, {"mean_es", r.mean_es}, {"std_es", r.std_es}});
    }
    nlohmann::ordered_json doc;
    doc["rows"] = rows;
    return doc.dump(2) + "\n";
}

std::string truth_to_json(const GroundTruth& truth)
{
    nlohmann::ordered_json circles = nlohmann::ordered_json::array();
    for (const auto& c : truth.circles)
        circles.push_back({{"x0", c.x0}, {"y0", c.y0}, {"r", c.r}});
    nlohmann::ordered_json doc;
    doc["width"] = truth.width;
    doc["height"] = truth.height;
    doc["circles"] = circles;
    return doc.dump(2) + "\n";
}

GroundTruth truth_from_json(const std::string& text)
{
    try {
        const auto doc = nlohmann::json::parse(text);
        GroundTruth t;
        t.width = doc.at("width").get<int>();
        t.height = doc.at("height").get<int>();
        for (const auto& c : doc.at("circles"))
            t.circles.push_back({c.at("x0").get<double>(), c.at("y0").get<double>(), c.at("r").get<double>()});
        return t;
    }
    catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("invalid ground-truth JSON: ") + e.what());
    }
}

} // namespace ddec
