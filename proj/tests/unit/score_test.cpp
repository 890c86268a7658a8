#include "trustq/score.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "test_support.hpp"
#include "trustq/errors.hpp"
#include "trustq/score_io.hpp"

namespace trustq {
namespace {

using testing::rel_err;
using testing::Rng;

const std::string kMetricsPath = std::string(TRUSTQ_DATA_DIR) + "/score/example_metrics.json";
const std::string kWeightsPath = std::string(TRUSTQ_DATA_DIR) + "/score/example_weights.json";

// Literal dot product of the example vectors, evaluated by hand.
constexpr double kExampleRawScore = 0.335562;

MetricEntry fraction(std::string name, double v, MetricCategory c = MetricCategory::ReliabilityValidity) {
  return {.name = std::move(name), .category = c, .kind = MetricKind::Fraction, .value = v, .cap = {}, .outcome = {}};
}

MetricEntry flag(std::string name, double v, MetricCategory c = MetricCategory::Safety) {
  return {.name = std::move(name), .category = c, .kind = MetricKind::Flag, .value = v, .cap = {}, .outcome = {}};
}

MetricEntry count(std::string name, double v, MetricCategory c = MetricCategory::BiasManagement) {
  return {.name = std::move(name), .category = c, .kind = MetricKind::Count, .value = v, .cap = {}, .outcome = {}};
}

Timestamp at(long long seconds) { return Timestamp(std::chrono::seconds(seconds)); }

TEST(Categories, ExactlySeven) {
  EXPECT_EQ(kAllCategories.size(), 7u);
  for (auto c : kAllCategories) {
    EXPECT_EQ(parse_category(to_string(c)), c);
  }
  EXPECT_FALSE(parse_category("fairness").has_value());
}

TEST(ValidateMetrics, ExampleVectorPassesButOutcomeSumOvershoots) {
  const auto metrics = load_metrics(kMetricsPath);
  ASSERT_EQ(metrics.size(), 23u);
  const auto report = validate_metrics(metrics);
  EXPECT_TRUE(report.ok());
  ASSERT_TRUE(report.outcome_sum.has_value());
  // 0.6 + 0.3429 + 0.0429 + 0.0143 = 1.0001
  EXPECT_NEAR(*report.outcome_sum, 1.0001, 1e-12);
  EXPECT_TRUE(report.outcome_sum_exceeds_one);
}

TEST(ValidateMetrics, FlagMustBeBinary) {
  const std::vector<MetricEntry> metrics{flag("System Design", 0.5)};
  const auto report = validate_metrics(metrics);
  ASSERT_EQ(report.entries.size(), 1u);
  EXPECT_FALSE(report.entries[0].ok);
  EXPECT_EQ(report.entries[0].reason, "flag must be 0 or 1");
  EXPECT_FALSE(report.ok());
}

TEST(ValidateMetrics, EmptyListGivesEmptyReport) {
  const auto report = validate_metrics({});
  EXPECT_TRUE(report.entries.empty());
  EXPECT_TRUE(report.ok());
  EXPECT_FALSE(report.outcome_sum.has_value());
}

TEST(ValidateMetrics, DomainFailures) {
  const std::vector<MetricEntry> metrics{fraction("a", 1.2), fraction("b", -0.1), count("c", -1),
                                         count("d", 2.5), fraction("e", 0.3)};
  const auto report = validate_metrics(metrics);
  EXPECT_FALSE(report.entries[0].ok);
  EXPECT_FALSE(report.entries[1].ok);
  EXPECT_EQ(report.entries[2].reason, "count must be nonnegative");
  EXPECT_EQ(report.entries[3].reason, "count must be an integer");
  EXPECT_TRUE(report.entries[4].ok);
  EXPECT_EQ(report.failures().size(), 4u);
}

TEST(RawScore, ExampleVectorsMatchHandCalculation) {
  const auto metrics = load_metrics(kMetricsPath);
  const auto weights = load_weights(kWeightsPath);
  const double raw = raw_score(metrics, weights);
  EXPECT_NEAR(raw, kExampleRawScore, 1e-12);
  const auto oracle = static_cast<double>(testing::brute_force_dot(kMetricsPath, kWeightsPath));
  EXPECT_LE(rel_err(raw, oracle), 1e-12);
}

TEST(RawScore, TrivialCases) {
  const std::vector<MetricEntry> zeros{fraction("a", 0), flag("b", 0), count("c", 0)};
  EXPECT_EQ(raw_score(zeros, WeightVector{{0.3, -0.2, 0.9}}), 0.0);
  const std::vector<MetricEntry> one{flag("a", 1)};
  EXPECT_EQ(raw_score(one, WeightVector{{0.5}}), 0.5);
}

TEST(RawScore, LengthMismatchNamesBothLengths) {
  const std::vector<MetricEntry> metrics{flag("a", 1), flag("b", 1)};
  try {
    raw_score(metrics, WeightVector{{0.5}});
    FAIL();
  } catch (const ValidationError& e) {
    const std::string what = e.what();
    EXPECT_NE(what.find("length 1"), std::string::npos) << what;
    EXPECT_NE(what.find("length 2"), std::string::npos) << what;
  }
}

TEST(RawScore, RejectsInvalidEntries) {
  const std::vector<MetricEntry> metrics{flag("a", 1), flag("b", 0.5)};
  try {
    raw_score(metrics, WeightVector{{0.5, 0.5}});
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.field(), "metrics[1].value");
  }
}

TEST(RawScore, CountNormalizerIsOptIn) {
  auto crashes = count("Number of Crashes", 3, MetricCategory::ReliabilityValidity);
  crashes.cap = 10.0;
  const std::vector<MetricEntry> metrics{crashes};
  const WeightVector w{{-0.14}};
  EXPECT_DOUBLE_EQ(raw_score(metrics, w), -0.42);
  EXPECT_DOUBLE_EQ(raw_score(metrics, w, {.normalize_counts = true}), 0.3 * -0.14);

  auto many = crashes;
  many.value = 50;
  const std::vector<MetricEntry> saturated{many};
  EXPECT_DOUBLE_EQ(raw_score(saturated, w, {.normalize_counts = true}), -0.14);
}

TEST(TrustScore, ClampsToUnitInterval) {
  const std::vector<MetricEntry> m{count("n", 1)};
  EXPECT_EQ(trust_score(m, WeightVector{{1.5}}, at(0)).clamped_score, 1.0);
  EXPECT_EQ(trust_score(m, WeightVector{{-2.3}}, at(0)).clamped_score, -1.0);
  const auto mid = trust_score(m, WeightVector{{0.3}}, at(0));
  EXPECT_EQ(mid.clamped_score, 0.3);
  EXPECT_EQ(mid.raw_score, 0.3);
  EXPECT_EQ(mid.timestamp, at(0));
}

TEST(TrustScore, ContributionsSumToRaw) {
  const auto metrics = load_metrics(kMetricsPath);
  const auto record = trust_score(metrics, load_weights(kWeightsPath), at(1));
  ASSERT_EQ(record.contributions.size(), metrics.size());
  double sum = 0.0;
  for (const auto& c : record.contributions) sum += c.value;
  EXPECT_LE(rel_err(sum, record.raw_score), 1e-12);
  EXPECT_EQ(record.contributions[1].name, "Number of Crashes");
  EXPECT_DOUBLE_EQ(record.contributions[1].value, -0.42);
}

TEST(CategoryBreakdown, ExampleSubtotals) {
  const auto metrics = load_metrics(kMetricsPath);
  const auto record = trust_score(metrics, load_weights(kWeightsPath), at(1));
  const auto breakdown = category_breakdown(record, metrics);
  ASSERT_EQ(breakdown.size(), 7u);
  // Hand evaluation per category.
  EXPECT_NEAR(breakdown.at(MetricCategory::ReliabilityValidity), -0.059438, 1e-12);
  EXPECT_NEAR(breakdown.at(MetricCategory::Safety), 0.10, 1e-12);
  EXPECT_NEAR(breakdown.at(MetricCategory::SecurityResilience), 0.19, 1e-12);
  EXPECT_NEAR(breakdown.at(MetricCategory::AccountabilityTransparency), 0.05, 1e-12);
  EXPECT_NEAR(breakdown.at(MetricCategory::ExplainabilityInterpretability), 0.035, 1e-12);
  EXPECT_NEAR(breakdown.at(MetricCategory::Privacy), 0.08, 1e-12);
  EXPECT_NEAR(breakdown.at(MetricCategory::BiasManagement), -0.06, 1e-12);

  double sum = 0.0;
  for (const auto& [c, v] : breakdown) sum += v;
  EXPECT_LE(rel_err(sum, record.raw_score), 1e-12);
}

TEST(CategoryBreakdown, ZeroWeightsGiveZeroSubtotals) {
  const auto metrics = load_metrics(kMetricsPath);
  const WeightVector zero{std::vector<double>(metrics.size(), 0.0)};
  const auto breakdown = category_breakdown(trust_score(metrics, zero, at(1)), metrics);
  for (const auto& [c, v] : breakdown) EXPECT_EQ(v, 0.0) << to_string(c);
  EXPECT_FALSE(weight_warnings(zero).empty());
}

TEST(CategoryBreakdown, SingleCategory) {
  const std::vector<MetricEntry> metrics{flag("a", 1, MetricCategory::Privacy), flag("b", 1, MetricCategory::Privacy)};
  const auto breakdown = category_breakdown(trust_score(metrics, WeightVector{{0.2, 0.3}}, at(1)), metrics);
  int nonzero = 0;
  for (const auto& [c, v] : breakdown) nonzero += v != 0.0;
  EXPECT_EQ(nonzero, 1);
  EXPECT_DOUBLE_EQ(breakdown.at(MetricCategory::Privacy), 0.5);
}

TEST(WeightWarnings, ExampleWeightsDoNotSumToOne) {
  const auto warnings = weight_warnings(load_weights(kWeightsPath));
  ASSERT_EQ(warnings.size(), 1u);
  EXPECT_NE(warnings[0].find("0.9"), std::string::npos) << warnings[0];
  EXPECT_TRUE(weight_warnings(WeightVector{{0.25, 0.75}}).empty());
}

TEST(OutcomeEntries, UseCategorizableDenominator) {
  const auto entries = outcome_entries({.true_positives = 42, .true_negatives = 24, .false_positives = 3, .false_negatives = 1}, 70);
  EXPECT_DOUBLE_EQ(entries[0].value, 0.6);
  EXPECT_EQ(entries[3].outcome, OutcomeCell::FalseNegative);
  const auto report = validate_metrics(entries);
  EXPECT_TRUE(report.ok());
  EXPECT_FALSE(report.outcome_sum_exceeds_one);
  EXPECT_THROW(outcome_entries({.true_positives = 80}, 70), ValidationError);
  EXPECT_THROW(outcome_entries({}, 0), ValidationError);
}

TEST(ScoreIo, PositionalErrors) {
  try {
    parse_metrics(R"({"metrics":[{"name":"a","category":"safety","kind":"flag","value":1},
                                 {"name":"b","category":"safety","kind":"fraction","value":99.99}]})");
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.field(), "metrics[1].value");
  }
  try {
    parse_metrics(R"({"metrics":[{"name":"a","category":"safety","kind":"flag"}]})");
    FAIL();
  } catch (const FormatError& e) {
    EXPECT_NE(std::string(e.what()).find("metrics[0].value"), std::string::npos);
  }
  EXPECT_THROW(parse_metrics(R"({"metrics":[{"name":"a","category":"vibes","kind":"flag","value":1}]})"),
               ValidationError);
  EXPECT_THROW(parse_metrics("{not json"), FormatError);
  EXPECT_THROW(parse_weights(R"({"weights":[0.1,"x"]})"), FormatError);
  EXPECT_THROW(load_metrics("/nonexistent/metrics.json"), IoError);
}

// ----------------------------------------------------------------------------
// Properties

std::vector<MetricEntry> random_metrics(Rng& rng, std::size_t n) {
  std::vector<MetricEntry> out;
  for (std::size_t i = 0; i < n; ++i) {
    const auto category = kAllCategories[static_cast<std::size_t>(rng.integer(0, 6))];
    switch (rng.integer(0, 2)) {
      case 0: out.push_back(fraction("f" + std::to_string(i), rng.uniform(0.0, 1.0), category)); break;
      case 1: out.push_back(flag("b" + std::to_string(i), rng.coin() ? 1.0 : 0.0, category)); break;
      default: out.push_back(count("c" + std::to_string(i), rng.integer(0, 20), category)); break;
    }
  }
  return out;
}

WeightVector random_weights(Rng& rng, std::size_t n) {
  WeightVector w;
  for (std::size_t i = 0; i < n; ++i) w.weights.push_back(rng.uniform(-0.3, 0.3));
  return w;
}

TEST(ScoreProperty, ClampRangeAndIdempotence) {
  Rng rng;
  for (int i = 0; i < 10'000; ++i) {
    const double raw = rng.uniform(-10.0, 10.0);
    const double c = clamp_score(raw);
    ASSERT_GE(c, -1.0);
    ASSERT_LE(c, 1.0);
    ASSERT_EQ(clamp_score(c), c);
  }
}

TEST(ScoreProperty, MonotoneInEachMetric) {
  Rng rng;
  for (int i = 0; i < 2'000; ++i) {
    const std::size_t n = static_cast<std::size_t>(rng.integer(1, 12));
    auto metrics = random_metrics(rng, n);
    const auto weights = random_weights(rng, n);
    const auto j = static_cast<std::size_t>(rng.integer(0, static_cast<int>(n) - 1));
    const double before = trust_score(metrics, weights, at(0)).clamped_score;

    auto& m = metrics[j];
    const bool raise = weights.weights[j] > 0.0;
    switch (m.kind) {
      case MetricKind::Fraction: m.value = raise ? rng.uniform(m.value, 1.0) : rng.uniform(0.0, m.value); break;
      case MetricKind::Flag: m.value = raise ? 1.0 : 0.0; break;
      case MetricKind::Count: m.value = raise ? m.value + rng.integer(0, 5) : std::max(0.0, m.value - rng.integer(0, 5)); break;
    }
    const double after = trust_score(metrics, weights, at(0)).clamped_score;
    ASSERT_GE(after, before) << "trial " << i;
  }
}

TEST(ScoreProperty, PairedPermutationInvariance) {
  Rng rng;
  for (int i = 0; i < 2'000; ++i) {
    const std::size_t n = static_cast<std::size_t>(rng.integer(1, 30));
    const auto metrics = random_metrics(rng, n);
    const auto weights = random_weights(rng, n);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng.engine());
    std::vector<MetricEntry> pm;
    WeightVector pw;
    for (auto k : order) {
      pm.push_back(metrics[k]);
      pw.weights.push_back(weights.weights[k]);
    }
    double magnitude = 0.0;
    for (std::size_t k = 0; k < n; ++k) magnitude += std::abs(metrics[k].value * weights.weights[k]);
    ASSERT_LE(rel_err(raw_score(pm, pw), raw_score(metrics, weights), magnitude), 1e-12);
  }
}

TEST(ScoreProperty, RawScoreIsLinearInMetrics) {
  Rng rng;
  for (int i = 0; i < 2'000; ++i) {
    const std::size_t n = static_cast<std::size_t>(rng.integer(1, 30));
    auto a = random_metrics(rng, n);
    // Counts are closed under addition; keep every entry a count.
    for (auto& m : a) m = count(m.name, rng.integer(0, 50), m.category);
    auto b = a;
    for (auto& m : b) m.value = rng.integer(0, 50);
    auto sum = a;
    for (std::size_t k = 0; k < n; ++k) sum[k].value = a[k].value + b[k].value;
    const auto w = random_weights(rng, n);
    double magnitude = 0.0;
    for (std::size_t k = 0; k < n; ++k) magnitude += std::abs(sum[k].value * w.weights[k]);
    ASSERT_LE(rel_err(raw_score(sum, w), raw_score(a, w) + raw_score(b, w), magnitude), 1e-12);
  }
}

TEST(ScoreProperty, ContributionAndCategoryClosure) {
  Rng rng;
  for (int i = 0; i < 2'000; ++i) {
    const std::size_t n = static_cast<std::size_t>(rng.integer(1, 30));
    const auto metrics = random_metrics(rng, n);
    const auto record = trust_score(metrics, random_weights(rng, n), at(0));
    double magnitude = 0.0;
    double total = 0.0;
    for (const auto& c : record.contributions) {
      total += c.value;
      magnitude += std::abs(c.value);
    }
    ASSERT_LE(rel_err(total, record.raw_score, magnitude), 1e-12);
    double by_category = 0.0;
    for (const auto& [c, v] : category_breakdown(record, metrics)) by_category += v;
    ASSERT_LE(rel_err(by_category, record.raw_score, magnitude), 1e-12);
  }
}

}  // namespace
}  // namespace trustq
