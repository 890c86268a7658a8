#include "trustq/score_io.hpp"

#include <json.hpp>

#include "json_util.hpp"
#include "trustq/errors.hpp"
#include "trustq/io.hpp"

namespace trustq {

using nlohmann::json;

std::vector<MetricEntry> parse_metrics(std::string_view json_text) {
  const json doc = detail::parse_json(json_text);
  const json& list = detail::require(doc, "metrics", "");
  if (!list.is_array()) {
    throw FormatError("metrics: expected an array");
  }

  std::vector<MetricEntry> out;
  out.reserve(list.size());
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string path = "metrics[" + std::to_string(i) + "]";
    const json& item = list[i];
    if (!item.is_object()) {
      throw FormatError(path + ": expected an object");
    }
    MetricEntry entry;
    entry.name = detail::get_string(item, "name", path);

    const std::string category = detail::get_string(item, "category", path);
    auto parsed_category = parse_category(category);
    if (!parsed_category) {
      throw ValidationError(path + ".category", "unknown category '" + category + "'");
    }
    entry.category = *parsed_category;

    const std::string kind = detail::get_string(item, "kind", path);
    auto parsed_kind = parse_kind(kind);
    if (!parsed_kind) {
      throw ValidationError(path + ".kind", "unknown kind '" + kind + "'");
    }
    entry.kind = *parsed_kind;

    entry.value = detail::get_number(item, "value", path);
    if (auto reason = check_domain(entry.kind, entry.value)) {
      throw ValidationError(path + ".value", *reason);
    }

    if (item.contains("cap")) {
      entry.cap = detail::get_number(item, "cap", path);
      if (entry.kind != MetricKind::Count) {
        throw ValidationError(path + ".cap", "cap applies to count metrics only");
      }
      if (!(*entry.cap > 0.0)) {
        throw ValidationError(path + ".cap", "cap > 0", *entry.cap);
      }
    }
    if (item.contains("outcome")) {
      const std::string cell = detail::get_string(item, "outcome", path);
      entry.outcome = parse_outcome(cell);
      if (!entry.outcome) {
        throw ValidationError(path + ".outcome", "expected one of tp, tn, fp, fn");
      }
      if (entry.kind != MetricKind::Fraction) {
        throw ValidationError(path + ".outcome", "outcome metrics must be fractions");
      }
    }
    out.push_back(std::move(entry));
  }
  return out;
}

WeightVector parse_weights(std::string_view json_text) {
  const json doc = detail::parse_json(json_text);
  const json& list = detail::require(doc, "weights", "");
  if (!list.is_array()) {
    throw FormatError("weights: expected an array");
  }
  WeightVector out;
  out.weights.reserve(list.size());
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (!list[i].is_number()) {
      throw FormatError("weights[" + std::to_string(i) + "]: expected a number");
    }
    out.weights.push_back(list[i].get<double>());
  }
  return out;
}

std::vector<MetricEntry> load_metrics(const std::filesystem::path& path) {
  return parse_metrics(read_text_file(path));
}

WeightVector load_weights(const std::filesystem::path& path) {
  return parse_weights(read_text_file(path));
}

}  // namespace trustq
