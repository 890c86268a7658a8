#pragma once

#include <array>
#include <chrono>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace trustq {

// The seven trustworthiness categories of the NIST AI Risk Management Framework.
enum class MetricCategory {
  ReliabilityValidity,
  Safety,
  SecurityResilience,
  AccountabilityTransparency,
  ExplainabilityInterpretability,
  Privacy,
  BiasManagement,
};

inline constexpr std::array<MetricCategory, 7> kAllCategories{
    MetricCategory::ReliabilityValidity,
    MetricCategory::Safety,
    MetricCategory::SecurityResilience,
    MetricCategory::AccountabilityTransparency,
    MetricCategory::ExplainabilityInterpretability,
    MetricCategory::Privacy,
    MetricCategory::BiasManagement,
};

// fraction: a ratio in [0, 1] (99.99% is written 0.9999)
// flag:     presence (1) or absence (0) of a qualitative practice
// count:    a nonnegative integer tally (crashes, confirmed bias issues, ...)
enum class MetricKind { Fraction, Flag, Count };

// Confusion-matrix cell of an outcome-ratio metric. The four cells share the
// number of categorizable inferences as denominator, so their fractions may
// not sum above one.
enum class OutcomeCell { TruePositive, TrueNegative, FalsePositive, FalseNegative };

struct MetricEntry {
  std::string name;
  MetricCategory category = MetricCategory::ReliabilityValidity;
  MetricKind kind = MetricKind::Fraction;
  double value = 0.0;
  // Count normalizer: count -> min(count / cap, 1). Only applied when
  // ScoreOptions::normalize_counts is set.
  std::optional<double> cap;
  std::optional<OutcomeCell> outcome;
};

// Weights aligned index-for-index with a metric list. Negative weights
// penalize their metric. The weights are not required to sum to one.
struct WeightVector {
  std::vector<double> weights;
};

struct ScoreOptions {
  bool normalize_counts = false;
};

struct Contribution {
  std::string name;
  double value = 0.0;
};

using Timestamp = std::chrono::time_point<std::chrono::system_clock, std::chrono::nanoseconds>;

struct ScoreRecord {
  double raw_score = 0.0;
  double clamped_score = 0.0;
  std::vector<Contribution> contributions;
  Timestamp timestamp{};
};

struct EntryCheck {
  std::size_t index = 0;
  std::string name;
  bool ok = true;
  std::string reason;
};

struct ValidationReport {
  std::vector<EntryCheck> entries;
  // Sum of the outcome-cell fractions, when any are present.
  std::optional<double> outcome_sum;
  bool outcome_sum_exceeds_one = false;

  // True when every entry passed. The outcome-sum flag is advisory.
  bool ok() const;
  std::vector<std::string> failures() const;
};

inline constexpr double kOutcomeSumTolerance = 1e-9;

std::string_view to_string(MetricCategory category);
std::string_view to_string(MetricKind kind);
std::string_view to_string(OutcomeCell cell);
std::optional<MetricCategory> parse_category(std::string_view text);
std::optional<MetricKind> parse_kind(std::string_view text);
std::optional<OutcomeCell> parse_outcome(std::string_view text);

// Reason the value is outside its kind's domain, or nullopt when it conforms.
std::optional<std::string> check_domain(MetricKind kind, double value);

ValidationReport validate_metrics(std::span<const MetricEntry> metrics);

// Advisory findings about a weight vector: all-zero weights, sum != 1.
std::vector<std::string> weight_warnings(const WeightVector& weights);

// Value that enters the dot product for one entry.
double effective_value(const MetricEntry& entry, const ScoreOptions& options = {});

// Throws ValidationError on a length mismatch or an out-of-domain entry.
double raw_score(std::span<const MetricEntry> metrics, const WeightVector& weights,
                 const ScoreOptions& options = {});

double clamp_score(double raw);

ScoreRecord trust_score(std::span<const MetricEntry> metrics, const WeightVector& weights,
                        Timestamp timestamp, const ScoreOptions& options = {});

// Contributions of `record` summed per category of the aligned `metrics`.
// All seven categories are present in the result.
std::map<MetricCategory, double> category_breakdown(const ScoreRecord& record,
                                                    std::span<const MetricEntry> metrics);

struct OutcomeCounts {
  std::size_t true_positives = 0;
  std::size_t true_negatives = 0;
  std::size_t false_positives = 0;
  std::size_t false_negatives = 0;
};

// Four outcome-ratio entries over `categorizable_inferences`, the number of
// inferences whose outcome is knowable (not the total inference count).
std::array<MetricEntry, 4> outcome_entries(const OutcomeCounts& counts,
                                           std::size_t categorizable_inferences);

}  // namespace trustq
