#pragma once

#include <filesystem>
#include <string_view>
#include <vector>

#include "trustq/score.hpp"

namespace trustq {

// Metric file: {"metrics": [{"name", "category", "kind", "value", "cap"?, "outcome"?}]}
// Weight file: {"weights": [real, ...]}, index-aligned with the metrics.
// A single file may carry both keys.
//
// Syntax errors, wrong JSON types and missing keys raise FormatError; values
// outside their kind's domain raise ValidationError. Both carry positional
// paths such as "metrics[4].value".
std::vector<MetricEntry> parse_metrics(std::string_view json_text);
WeightVector parse_weights(std::string_view json_text);

std::vector<MetricEntry> load_metrics(const std::filesystem::path& path);
WeightVector load_weights(const std::filesystem::path& path);

}  // namespace trustq
