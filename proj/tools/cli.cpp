#include "cli.hpp"

#include <ddec/config.hpp>
#include <ddec/detector.hpp>
#include <ddec/edge_pipeline.hpp>
#include <ddec/evaluation.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace ddec::cli {

namespace {

// Message printed when no circle passes validation.
constexpr const char* kNoCircle = "no circle detected";

struct Failure {
    int code;
    std::string message;
};

std::string read_text(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text(const fs::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot write " + path.string());
    out << text;
    if (!out)
        throw IoError("write failed: " + path.string());
}

// First two bytes of a Netpbm file decide how it is read in auto mode.
bool is_bitmap(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open " + path.string());
    char magic[2] = {};
    in.read(magic, 2);
    if (in.gcount() != 2 || magic[0] != 'P')
        throw IoError(path.string() + ": not a Netpbm file");
    return magic[1] == '1' || magic[1] == '4';
}

Timing parse_timing(const std::string& s)
{
    return s == "off" ? Timing::off : Timing::wall;
}

ordered_json config_json(const DetectorConfig& cfg)
{
    ordered_json j;
    j["window"] = cfg.window;
    j["min_radius"] = cfg.min_radius;
    j["max_radius"] = cfg.max_radius;
    j["max_circles"] = cfg.max_circles;
    j["completeness_threshold"] = cfg.completeness_threshold;
    j["mask_tolerance"] = cfg.mask_tolerance;
    j["f"] = cfg.dde.f;
    j["cr"] = cfg.dde.cr;
    j["pop_size"] = cfg.dde.pop_size;
    j["max_generations"] = cfg.dde.max_generations;
    j["h"] = cfg.dde.h;
    j["transform_cap"] = cfg.dde.transform_cap;
    j["penalty_cost"] = cfg.dde.penalty_cost;
    if (cfg.dde.target_objective)
        j["target_objective"] = *cfg.dde.target_objective;
    else
        j["target_objective"] = nullptr;
    return j;
}

std::string svg_overlay(const EdgeMap& edges, const std::vector<Detection>& dets)
{
    std::string s;
    char buf[256];
    std::snprintf(buf, sizeof(buf),
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%d\" height=\"%d\" viewBox=\"0 0 %d %d\">\n"
        "<rect width=\"%d\" height=\"%d\" fill=\"black\"/>\n<g fill=\"white\">\n",
        edges.width(), edges.height(), edges.width(), edges.height(), edges.width(), edges.height());
    s += buf;
    for (const auto& p : edges.points()) {
        std::snprintf(buf, sizeof(buf), "<rect x=\"%d\" y=\"%d\" width=\"1\" height=\"1\"/>\n", p.x, p.y);
        s += buf;
    }
    s += "</g>\n<g fill=\"none\" stroke=\"red\" stroke-width=\"1\">\n";
    for (const auto& d : dets) {
        // Pixel centers sit at +0.5 in SVG user space.
        std::snprintf(buf, sizeof(buf), "<circle cx=\"%.3f\" cy=\"%.3f\" r=\"%.3f\"/>\n", d.circle.x0 + 0.5, d.circle.y0 + 0.5, d.circle.r);
        s += buf;
    }
    s += "</g>\n</svg>\n";
    return s;
}

// "x,y,r;x,y,r" -> circles. Returns nullopt when the text is a plain count.
std::optional<std::vector<Circle>> parse_circle_list(const std::string& text)
{
    if (text.find(',') == std::string::npos)
        return std::nullopt;
    std::vector<Circle> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ';')) {
        if (item.find_first_not_of(" \t") == std::string::npos)
            continue;
        Circle c;
        char c1 = 0;
        char c2 = 0;
        std::istringstream is(item);
        if (!(is >> c.x0 >> c1 >> c.y0 >> c2 >> c.r) || c1 != ',' || c2 != ',')
            throw CLI::ValidationError("--circles", "expected x,y,r triples separated by ';', got '" + item + "'");
        std::string rest;
        if (is >> rest)
            throw CLI::ValidationError("--circles", "trailing text in '" + item + "'");
        out.push_back(c);
    }
    return out;
}

std::vector<Rng::seed_type> read_seeds(const fs::path& path)
{
    std::istringstream in(read_text(path));
    std::vector<Rng::seed_type> seeds;
    std::string tok;
    while (in >> tok) {
        try {
            std::size_t used = 0;
            seeds.push_back(std::stoull(tok, &used));
            if (used != tok.size())
                throw std::invalid_argument(tok);
        }
        catch (const std::exception&) {
            throw IoError(path.string() + ": invalid seed '" + tok + "'");
        }
    }
    return seeds;
}

Rng::seed_type resolve_seed(const std::optional<Rng::seed_type>& given, std::ostream& err)
{
    if (given)
        return *given;
    const auto s = entropy_seed();
    err << "seed: " << s << "\n";
    return s;
}

struct EdgesOpts {
    std::string input;
    std::string output;
    CannyParams canny;
    bool ascii = false;
};

int cmd_edges(const EdgesOpts& o, std::ostream& out)
{
    o.canny.validate();
    const GrayImage img = load_gray_image(o.input);
    const EdgeMap edges = canny_edges(img, o.canny);
    save_edge_map(edges, o.output, o.ascii ? NetpbmEncoding::ascii : NetpbmEncoding::binary);
    out << "np " << edges.np() << "\n";
    return ok;
}

struct DetectOpts {
    std::string input;
    std::size_t circles = 1;
    std::optional<Rng::seed_type> seed;
    std::optional<std::size_t> generations;
    std::optional<int> window;
    std::optional<double> min_radius;
    std::optional<double> threshold;
    std::string json_out;
    std::string svg_out;
    std::string config;
    std::string input_kind = "auto";
    std::string timing = "wall";
    CannyParams canny;
};

int cmd_detect(const DetectOpts& o, std::ostream& out, std::ostream& err)
{
    DetectorConfig cfg;
    if (!o.config.empty())
        apply_config_file(o.config, cfg);
    cfg.max_circles = o.circles;
    if (o.generations)
        cfg.dde.max_generations = *o.generations;
    if (o.window)
        cfg.window = *o.window;
    if (o.min_radius)
        cfg.min_radius = *o.min_radius;
    if (o.threshold)
        cfg.completeness_threshold = *o.threshold;
    cfg.validate();

    const bool bitmap = o.input_kind == "edges" || (o.input_kind == "auto" && is_bitmap(o.input));
    const EdgeMap edges = bitmap ? load_edge_map(o.input) : canny_edges(load_gray_image(o.input), o.canny);

    if (edges.np() < 3)
        throw InsufficientEdges("need at least 3 edge points, got " + std::to_string(edges.np()));

    const Rng::seed_type seed = resolve_seed(o.seed, err);
    Rng rng(seed);
    std::vector<Detection> dets = detect_multiple(edges, cfg, rng);
    if (parse_timing(o.timing) == Timing::off) {
        for (auto& d : dets)
            d.elapsed = 0.0;
    }

    ordered_json doc;
    doc["input"] = o.input;
    doc["config"] = config_json(cfg);
    doc["seed"] = seed;
    ordered_json list = ordered_json::array();
    for (const auto& d : dets) {
        list.push_back({{"x0", d.circle.x0}, {"y0", d.circle.y0}, {"r", d.circle.r}, {"objective", d.objective},
            {"hit_ratio", d.hit_ratio}, {"generations", d.generations}, {"elapsed_s", d.elapsed}});
    }
    doc["detections"] = list;
    const std::string text = doc.dump(2) + "\n";

    if (o.json_out.empty())
        out << text;
    else
        write_text(o.json_out, text);
    if (!o.svg_out.empty())
        write_text(o.svg_out, svg_overlay(edges, dets));

    if (dets.empty()) {
        err << kNoCircle << "\n";
        return no_circle;
    }
    if (!o.json_out.empty()) {
        for (const auto& d : dets)
            out << "circle x0=" << d.circle.x0 << " y0=" << d.circle.y0 << " r=" << d.circle.r << " J=" << d.objective << "\n";
    }
    return ok;
}

struct SynthOpts {
    int width = 200;
    int height = 200;
    std::string circles = "1";
    double noise = 0.03;
    std::optional<Rng::seed_type> seed;
    std::string out;
    int min_r = 20;
    int max_r = 80;
    int margin = 5;
};

int cmd_synth(const SynthOpts& o, std::ostream& out, std::ostream& err)
{
    const Rng::seed_type seed = resolve_seed(o.seed, err);
    Rng rng(seed);
    SceneSpec spec;
    spec.width = o.width;
    spec.height = o.height;
    spec.noise_density = o.noise;
    spec.margin = o.margin;

    std::vector<Circle> circles;
    if (auto listed = parse_circle_list(o.circles)) {
        circles = std::move(*listed);
    }
    else {
        std::size_t count = 0;
        try {
            std::size_t used = 0;
            count = std::stoul(o.circles, &used);
            if (used != o.circles.size())
                throw std::invalid_argument(o.circles);
        }
        catch (const std::exception&) {
            throw CLI::ValidationError("--circles", "expected a count or x,y,r triples, got '" + o.circles + "'");
        }
        circles = random_circles(o.width, o.height, count, o.min_r, o.max_r, rng, o.margin);
    }
    for (const auto& c : circles)
        spec.circles.push_back({c, 0.0, 360.0});

    const SyntheticScene scene = generate_synthetic(spec, rng);
    save_gray_image(scene.image, o.out + ".pgm");
    save_edge_map(scene.edges, o.out + ".pbm");
    write_text(o.out + ".json", truth_to_json(scene.truth));
    out << "wrote " << o.out << ".{pgm,pbm,json}: " << scene.truth.circles.size() << " circle(s), np " << scene.edges.np() << "\n";
    return ok;
}

struct BenchOpts {
    std::string suite;
    std::size_t runs = 35;
    std::string seeds_file;
    std::optional<Rng::seed_type> seed;
    std::string csv_out;
    std::string json_out;
    std::string config;
    std::string timing = "wall";
};

std::vector<BenchCase> load_suite(const fs::path& dir)
{
    if (!fs::is_directory(dir))
        throw Failure{bad_suite, "suite directory not found: " + dir.string()};
    std::vector<fs::path> maps;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".pbm")
            maps.push_back(entry.path());
    }
    std::sort(maps.begin(), maps.end());
    std::vector<BenchCase> suite;
    for (const auto& m : maps) {
        fs::path truth = m;
        truth.replace_extension(".json");
        if (!fs::exists(truth))
            throw Failure{bad_suite, "missing ground truth for " + m.string()};
        GroundTruth t;
        EdgeMap e(1, 1);
        try {
            t = truth_from_json(read_text(truth));
            e = load_edge_map(m);
        }
        catch (const IoError& ex) {
            throw Failure{bad_suite, ex.what()};
        }
        if (t.width != e.width() || t.height != e.height())
            throw Failure{bad_suite, truth.string() + ": size does not match " + m.string()};
        suite.push_back({m.stem().string(), std::move(e), std::move(t)});
    }
    if (suite.empty())
        throw Failure{bad_suite, "suite is empty: " + dir.string()};
    return suite;
}

int cmd_bench(const BenchOpts& o, std::ostream& out, std::ostream& err)
{
    DetectorConfig cfg;
    if (!o.config.empty())
        apply_config_file(o.config, cfg);
    cfg.validate();
    const auto suite = load_suite(o.suite);

    std::vector<Rng::seed_type> seeds;
    if (!o.seeds_file.empty()) {
        seeds = read_seeds(o.seeds_file);
        if (seeds.size() < o.runs)
            throw Failure{bad_suite, o.seeds_file + ": " + std::to_string(seeds.size()) + " seeds for " + std::to_string(o.runs) + " runs"};
    }
    else {
        Rng master(resolve_seed(o.seed, err));
        for (std::size_t i = 0; i < o.runs; ++i)
            seeds.push_back(master.next());
    }

    const BenchReport report = run_benchmark(suite, o.runs, cfg, seeds, {}, parse_timing(o.timing));
    const std::string csv = to_csv(report);
    if (o.csv_out.empty())
        out << csv;
    else
        write_text(o.csv_out, csv);
    if (!o.json_out.empty())
        write_text(o.json_out, to_json(report));
    return ok;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Circle detection with discrete differential evolution", "ddec"};
    app.require_subcommand(1);

    EdgesOpts eo;
    auto* edges = app.add_subcommand("edges", "Canny edge map of a PGM image, written as PBM");
    edges->add_option("input", eo.input, "Input PGM")->required();
    edges->add_option("output", eo.output, "Output PBM")->required();
    edges->add_option("--sigma", eo.canny.gaussian_sigma, "Gaussian sigma")->capture_default_str();
    edges->add_option("--low", eo.canny.low_threshold, "Low hysteresis threshold (fraction of max gradient)")->capture_default_str();
    edges->add_option("--high", eo.canny.high_threshold, "High hysteresis threshold (fraction of max gradient)")->capture_default_str();
    edges->add_flag("--ascii", eo.ascii, "Write plain (P1) instead of raw (P4)");

    DetectOpts d;
    auto* detect = app.add_subcommand("detect", "Detect circles in an edge map (PBM) or image (PGM)");
    detect->add_option("input", d.input, "Input PBM edge map or PGM image")->required();
    detect->add_option("--circles", d.circles, "Maximum number of circles")->capture_default_str()->check(CLI::PositiveNumber);
    detect->add_option("--seed", d.seed, "RNG seed (entropy when omitted)");
    detect->add_option("--generations", d.generations, "Generations per search");
    detect->add_option("--window", d.window, "Odd neighbourhood side length");
    detect->add_option("--min-radius", d.min_radius, "Smallest admissible radius");
    detect->add_option("--threshold", d.threshold, "Completeness threshold (minimum hit ratio)");
    detect->add_option("--json", d.json_out, "Write the result document here instead of stdout");
    detect->add_option("--svg", d.svg_out, "Write an SVG overlay");
    detect->add_option("--config", d.config, "key = value overrides of the defaults")->check(CLI::ExistingFile);
    detect->add_option("--input-kind", d.input_kind, "auto, edges or image")->check(CLI::IsMember({"auto", "edges", "image"}))->capture_default_str();
    detect->add_option("--timing", d.timing, "wall, or off to zero elapsed times")->check(CLI::IsMember({"wall", "off"}))->capture_default_str();

    SynthOpts s;
    auto* synth = app.add_subcommand("synth", "Generate a synthetic scene: PGM image, PBM edges, JSON truth");
    synth->add_option("--width", s.width, "Image width")->capture_default_str();
    synth->add_option("--height", s.height, "Image height")->capture_default_str();
    synth->add_option("--circles", s.circles, "A count of random circles, or x,y,r;x,y,r;...")->capture_default_str();
    synth->add_option("--noise", s.noise, "Salt-and-pepper density")->capture_default_str()->check(CLI::Range(0.0, 1.0));
    synth->add_option("--seed", s.seed, "RNG seed (entropy when omitted)");
    synth->add_option("--out", s.out, "Output path prefix")->required();
    synth->add_option("--min-r", s.min_r, "Smallest random radius")->capture_default_str();
    synth->add_option("--max-r", s.max_r, "Largest random radius")->capture_default_str();
    synth->add_option("--margin", s.margin, "Border and separation margin")->capture_default_str();

    BenchOpts b;
    auto* bench = app.add_subcommand("bench", "Success rate and error over a suite of name.pbm + name.json pairs");
    bench->add_option("--suite", b.suite, "Suite directory")->required();
    bench->add_option("--runs", b.runs, "Runs per image")->capture_default_str()->check(CLI::PositiveNumber);
    bench->add_option("--seeds", b.seeds_file, "File with one seed per run");
    bench->add_option("--seed", b.seed, "Master seed when no seed file is given");
    bench->add_option("--csv", b.csv_out, "CSV report path (stdout when omitted)");
    bench->add_option("--json", b.json_out, "JSON report path");
    bench->add_option("--config", b.config, "key = value overrides of the defaults")->check(CLI::ExistingFile);
    bench->add_option("--timing", b.timing, "wall, or off to zero time columns")->check(CLI::IsMember({"wall", "off"}))->capture_default_str();

    std::vector<std::string> rev(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
    std::reverse(rev.begin(), rev.end());
    try {
        app.parse(rev);
    }
    catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        if (*edges)
            return cmd_edges(eo, out);
        if (*detect)
            return cmd_detect(d, out, err);
        if (*synth)
            return cmd_synth(s, out, err);
        return cmd_bench(b, out, err);
    }
    catch (const Failure& f) {
        err << "error: " << f.message << "\n";
        return f.code;
    }
    catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return io_error;
    }
    catch (const InsufficientEdges& e) {
        err << "error: " << e.what() << "\n";
        return insufficient_edges;
    }
    catch (const PlacementError& e) {
        err << "error: " << e.what() << "\n";
        return generation_error;
    }
    catch (const CLI::ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return e.get_exit_code();
    }
    catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return generation_error;
    }
    catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return generation_error;
    }
}

int run(int argc, char** argv)
{
    return run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}

} // namespace ddec::cli
