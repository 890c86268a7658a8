#include "trustq/score.hpp"

#include <algorithm>
#include <cmath>

#include "trustq/errors.hpp"
#include "trustq/format.hpp"

namespace trustq {
namespace {

struct CategoryName {
  MetricCategory category;
  std::string_view name;
};

constexpr std::array<CategoryName, 7> kCategoryNames{{
    {MetricCategory::ReliabilityValidity, "reliability_validity"},
    {MetricCategory::Safety, "safety"},
    {MetricCategory::SecurityResilience, "security_resilience"},
    {MetricCategory::AccountabilityTransparency, "accountability_transparency"},
    {MetricCategory::ExplainabilityInterpretability, "explainability_interpretability"},
    {MetricCategory::Privacy, "privacy"},
    {MetricCategory::BiasManagement, "bias_management"},
}};

std::string entry_path(std::size_t index) { return "metrics[" + std::to_string(index) + "]"; }

}  // namespace

std::string_view to_string(MetricCategory category) {
  for (const auto& [c, name] : kCategoryNames) {
    if (c == category) return name;
  }
  return "unknown";
}

std::string_view to_string(MetricKind kind) {
  switch (kind) {
    case MetricKind::Fraction: return "fraction";
    case MetricKind::Flag: return "flag";
    case MetricKind::Count: return "count";
  }
  return "unknown";
}

std::string_view to_string(OutcomeCell cell) {
  switch (cell) {
    case OutcomeCell::TruePositive: return "tp";
    case OutcomeCell::TrueNegative: return "tn";
    case OutcomeCell::FalsePositive: return "fp";
    case OutcomeCell::FalseNegative: return "fn";
  }
  return "unknown";
}

std::optional<MetricCategory> parse_category(std::string_view text) {
  for (const auto& [c, name] : kCategoryNames) {
    if (name == text) return c;
  }
  return std::nullopt;
}

std::optional<MetricKind> parse_kind(std::string_view text) {
  if (text == "fraction") return MetricKind::Fraction;
  if (text == "flag") return MetricKind::Flag;
  if (text == "count") return MetricKind::Count;
  return std::nullopt;
}

std::optional<OutcomeCell> parse_outcome(std::string_view text) {
  if (text == "tp") return OutcomeCell::TruePositive;
  if (text == "tn") return OutcomeCell::TrueNegative;
  if (text == "fp") return OutcomeCell::FalsePositive;
  if (text == "fn") return OutcomeCell::FalseNegative;
  return std::nullopt;
}

std::optional<std::string> check_domain(MetricKind kind, double value) {
  if (!std::isfinite(value)) {
    return "value must be finite";
  }
  switch (kind) {
    case MetricKind::Fraction:
      if (value < 0.0 || value > 1.0) return "fraction must be in [0, 1]";
      break;
    case MetricKind::Flag:
      if (value != 0.0 && value != 1.0) return "flag must be 0 or 1";
      break;
    case MetricKind::Count:
      if (value < 0.0) return "count must be nonnegative";
      if (value != std::floor(value)) return "count must be an integer";
      break;
  }
  return std::nullopt;
}

bool ValidationReport::ok() const {
  return std::all_of(entries.begin(), entries.end(), [](const EntryCheck& e) { return e.ok; });
}

std::vector<std::string> ValidationReport::failures() const {
  std::vector<std::string> out;
  for (const auto& e : entries) {
    if (!e.ok) out.push_back(entry_path(e.index) + ".value (" + e.name + "): " + e.reason);
  }
  return out;
}

ValidationReport validate_metrics(std::span<const MetricEntry> metrics) {
  ValidationReport report;
  double outcome_sum = 0.0;
  bool any_outcome = false;
  for (std::size_t i = 0; i < metrics.size(); ++i) {
    const auto& m = metrics[i];
    EntryCheck check{.index = i, .name = m.name, .ok = true, .reason = {}};
    if (auto reason = check_domain(m.kind, m.value)) {
      check.ok = false;
      check.reason = *reason;
    } else if (m.cap && !(*m.cap > 0.0 && std::isfinite(*m.cap))) {
      check.ok = false;
      check.reason = "cap must be a positive finite number";
    } else if (m.cap && m.kind != MetricKind::Count) {
      check.ok = false;
      check.reason = "cap applies to count metrics only";
    } else if (m.outcome && m.kind != MetricKind::Fraction) {
      check.ok = false;
      check.reason = "outcome metrics must be fractions";
    }
    if (m.outcome) {
      any_outcome = true;
      outcome_sum += m.value;
    }
    report.entries.push_back(std::move(check));
  }
  if (any_outcome) {
    report.outcome_sum = outcome_sum;
    report.outcome_sum_exceeds_one = outcome_sum > 1.0 + kOutcomeSumTolerance;
  }
  return report;
}

std::vector<std::string> weight_warnings(const WeightVector& weights) {
  std::vector<std::string> out;
  double sum = 0.0;
  bool any_nonzero = false;
  for (double w : weights.weights) {
    sum += w;
    any_nonzero = any_nonzero || w != 0.0;
  }
  if (!any_nonzero) {
    out.push_back("all weights are zero");
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    out.push_back("weights sum to " + format_shortest(sum) + ", not 1");
  }
  return out;
}

double effective_value(const MetricEntry& entry, const ScoreOptions& options) {
  if (options.normalize_counts && entry.kind == MetricKind::Count && entry.cap) {
    return std::min(entry.value / *entry.cap, 1.0);
  }
  return entry.value;
}

namespace {

std::vector<Contribution> contributions_of(std::span<const MetricEntry> metrics,
                                           const WeightVector& weights,
                                           const ScoreOptions& options) {
  if (metrics.size() != weights.weights.size()) {
    throw ValidationError("weights", "length " + std::to_string(weights.weights.size()) +
                                         " does not match metrics length " +
                                         std::to_string(metrics.size()));
  }
  const auto report = validate_metrics(metrics);
  for (const auto& e : report.entries) {
    if (!e.ok) throw ValidationError(entry_path(e.index) + ".value", e.reason);
  }
  for (std::size_t i = 0; i < weights.weights.size(); ++i) {
    if (!std::isfinite(weights.weights[i])) {
      throw ValidationError("weights[" + std::to_string(i) + "]", "a finite value",
                            weights.weights[i]);
    }
  }

  std::vector<Contribution> out;
  out.reserve(metrics.size());
  for (std::size_t i = 0; i < metrics.size(); ++i) {
    out.push_back({metrics[i].name, effective_value(metrics[i], options) * weights.weights[i]});
  }
  return out;
}

double sum_of(const std::vector<Contribution>& contributions) {
  double total = 0.0;
  for (const auto& c : contributions) total += c.value;
  return total;
}

}  // namespace

double raw_score(std::span<const MetricEntry> metrics, const WeightVector& weights,
                 const ScoreOptions& options) {
  return sum_of(contributions_of(metrics, weights, options));
}

double clamp_score(double raw) { return std::min(1.0, std::max(raw, -1.0)); }

ScoreRecord trust_score(std::span<const MetricEntry> metrics, const WeightVector& weights,
                        Timestamp timestamp, const ScoreOptions& options) {
  ScoreRecord record;
  record.contributions = contributions_of(metrics, weights, options);
  record.raw_score = sum_of(record.contributions);
  record.clamped_score = clamp_score(record.raw_score);
  record.timestamp = timestamp;
  return record;
}

std::map<MetricCategory, double> category_breakdown(const ScoreRecord& record,
                                                    std::span<const MetricEntry> metrics) {
  std::map<MetricCategory, double> out;
  for (auto c : kAllCategories) out[c] = 0.0;
  const std::size_t n = std::min(record.contributions.size(), metrics.size());
  for (std::size_t i = 0; i < n; ++i) {
    out[metrics[i].category] += record.contributions[i].value;
  }
  return out;
}

std::array<MetricEntry, 4> outcome_entries(const OutcomeCounts& counts,
                                           std::size_t categorizable_inferences) {
  if (categorizable_inferences == 0) {
    throw ValidationError("categorizable_inferences", "must be positive");
  }
  const std::size_t total = counts.true_positives + counts.true_negatives +
                            counts.false_positives + counts.false_negatives;
  if (total > categorizable_inferences) {
    throw ValidationError("categorizable_inferences",
                          "outcome counts total " + std::to_string(total) + " exceeds " +
                              std::to_string(categorizable_inferences));
  }
  const auto denom = static_cast<double>(categorizable_inferences);
  auto make = [&](const char* name, std::size_t n, OutcomeCell cell) {
    return MetricEntry{.name = name,
                       .category = MetricCategory::ReliabilityValidity,
                       .kind = MetricKind::Fraction,
                       .value = static_cast<double>(n) / denom,
                       .cap = std::nullopt,
                       .outcome = cell};
  };
  return {make("True Positives/Number of Inferences", counts.true_positives,
               OutcomeCell::TruePositive),
          make("True Negatives/Number of Inferences", counts.true_negatives,
               OutcomeCell::TrueNegative),
          make("False Positives/Number of Inferences", counts.false_positives,
               OutcomeCell::FalsePositive),
          make("False Negatives/Number of Inferences", counts.false_negatives,
               OutcomeCell::FalseNegative)};
}

}  // namespace trustq
