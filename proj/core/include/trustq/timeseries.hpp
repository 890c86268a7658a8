#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "trustq/score.hpp"

namespace trustq {

inline constexpr std::size_t kDefaultWindow = 8;
inline constexpr double kDefaultAbruptThreshold = 0.2;

enum class FluctuationVerdict { Gentle, Abrupt };

std::string_view to_string(FluctuationVerdict verdict);

struct FluctuationReport {
  std::size_t window = 0;
  double max_abs_delta = 0.0;  // largest |s[i+1] - s[i]| in the window
  double range = 0.0;          // max - min in the window
  double std_dev = 0.0;        // population standard deviation
  FluctuationVerdict verdict = FluctuationVerdict::Gentle;
};

// Score records in strictly increasing timestamp order.
class ScoreSeries {
 public:
  ScoreSeries() = default;

  // Throws OrderingError unless record.timestamp is after the last one, and
  // ValidationError when the clamped score is outside [-1, 1].
  void append(ScoreRecord record);

  std::span<const ScoreRecord> records() const { return records_; }
  std::size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }

  friend bool operator==(const ScoreSeries&, const ScoreSeries&);

 private:
  std::vector<ScoreRecord> records_;
};

bool operator==(const ScoreRecord& a, const ScoreRecord& b);
bool operator==(const Contribution& a, const Contribution& b);

// Statistics over the trailing `window` clamped scores. Abrupt iff
// max_abs_delta > abrupt_threshold.
FluctuationReport fluctuation(const ScoreSeries& series, std::size_t window = kDefaultWindow,
                              double abrupt_threshold = kDefaultAbruptThreshold);
FluctuationReport fluctuation(std::span<const double> scores, std::size_t window,
                              double abrupt_threshold);

// RFC 3339 in UTC with the shortest exact fractional-second suffix.
std::string format_rfc3339(Timestamp t);
// Accepts "Z" or a numeric offset; fractional seconds up to nanoseconds.
Timestamp parse_rfc3339(std::string_view text);

// One JSONL line (no trailing newline):
// {"timestamp": ..., "raw": ..., "clamped": ..., "contributions": [{"name", "value"}]}
std::string to_json_line(const ScoreRecord& record);
ScoreRecord from_json_line(std::string_view line);

ScoreSeries parse_history(std::string_view jsonl);
std::string serialize_history(const ScoreSeries& series);

// JSONL-backed series. Appends write one complete line and flush; a single
// writer is assumed, readers may load concurrently.
class HistoryFile {
 public:
  // Loads the file when it exists; a missing file is an empty history.
  explicit HistoryFile(std::filesystem::path path);

  // Throws IoError when the file does not exist.
  static HistoryFile open_existing(std::filesystem::path path);

  const ScoreSeries& series() const { return series_; }
  const std::filesystem::path& path() const { return path_; }

  void append(ScoreRecord record);

  // Rewrites the whole file atomically from the in-memory series.
  void save();

 private:
  std::filesystem::path path_;
  ScoreSeries series_;
  bool needs_newline_ = false;
};

}  // namespace trustq
