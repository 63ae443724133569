#pragma once

#include <ddec/detector.hpp>

#include <filesystem>
#include <string>

namespace ddec {

/// Applies `key = value` lines to cfg. Blank lines and `#` comments are
/// ignored. Recognized keys:
///   f, cr, pop_size, max_generations, h, transform_cap, penalty_cost,
///   target_objective (a number, or "none"),
///   window, min_radius, max_radius, max_circles,
///   completeness_threshold, mask_tolerance.
/// Unknown keys and malformed values throw ConfigError.
void apply_config_text(const std::string& text, DetectorConfig& cfg);

void apply_config_file(const std::filesystem::path& path, DetectorConfig& cfg);

} // namespace ddec
