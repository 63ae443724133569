#include <ddec/config.hpp>

#include <charconv>
#include <fstream>
#include <sstream>

namespace ddec {

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v)
{
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size())
        throw ConfigError("config: key '" + key + "' expects a number, got '" + v + "'");
    return out;
}

std::size_t to_count(const std::string& key, const std::string& v)
{
    std::size_t out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size())
        throw ConfigError("config: key '" + key + "' expects a non-negative integer, got '" + v + "'");
    return out;
}

} // namespace

void apply_config_text(const std::string& text, DetectorConfig& cfg)
{
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));

        if (key == "f")
            cfg.dde.f = to_double(key, value);
        else if (key == "cr")
            cfg.dde.cr = to_double(key, value);
        else if (key == "pop_size")
            cfg.dde.pop_size = to_count(key, value);
        else if (key == "max_generations")
            cfg.dde.max_generations = to_count(key, value);
        else if (key == "h")
            cfg.dde.h = to_double(key, value);
        else if (key == "transform_cap")
            cfg.dde.transform_cap = static_cast<std::int64_t>(to_count(key, value));
        else if (key == "penalty_cost")
            cfg.dde.penalty_cost = to_double(key, value);
        else if (key == "target_objective")
            cfg.dde.target_objective = value == "none" ? std::nullopt : std::optional<double>(to_double(key, value));
        else if (key == "window")
            cfg.window = static_cast<int>(to_count(key, value));
        else if (key == "min_radius")
            cfg.min_radius = to_double(key, value);
        else if (key == "max_radius")
            cfg.max_radius = to_double(key, value);
        else if (key == "max_circles")
            cfg.max_circles = to_count(key, value);
        else if (key == "completeness_threshold")
            cfg.completeness_threshold = to_double(key, value);
        else if (key == "mask_tolerance")
            cfg.mask_tolerance = to_double(key, value);
        else
            throw ConfigError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
    cfg.validate();
}

void apply_config_file(const std::filesystem::path& path, DetectorConfig& cfg)
{
    std::ifstream in(path);
    if (!in)
        throw IoError(path.string() + ": cannot open config file");
    std::ostringstream text;
    text << in.rdbuf();
    apply_config_text(text.str(), cfg);
}

} // namespace ddec
