#include "trustq/timeseries.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>

#include <json.hpp>

#include "json_util.hpp"
#include "trustq/errors.hpp"
#include "trustq/io.hpp"

namespace trustq {
namespace {

using ojson = nlohmann::ordered_json;

// Proleptic Gregorian day counts relative to 1970-01-01 (H. Hinnant).
std::int64_t days_from_civil(std::int64_t y, unsigned m, unsigned d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const auto yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153 * (m > 2 ? m - 3 : m + 9) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

struct Civil {
  std::int64_t year;
  unsigned month;
  unsigned day;
};

Civil civil_from_days(std::int64_t z) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const auto doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  const unsigned d = doy - (153 * mp + 2) / 5 + 1;
  const unsigned m = mp < 10 ? mp + 3 : mp - 9;
  return {y + (m <= 2), m, d};
}

bool is_leap(std::int64_t y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

unsigned days_in_month(std::int64_t y, unsigned m) {
  static constexpr unsigned kDays[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  return m == 2 && is_leap(y) ? 29 : kDays[m - 1];
}

std::string two(unsigned v) {
  std::string s = std::to_string(v);
  return v < 10 ? "0" + s : s;
}

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  unsigned digits(std::size_t n) {
    if (pos_ + n > text_.size()) fail();
    unsigned v = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const char c = text_[pos_ + i];
      if (c < '0' || c > '9') fail();
      v = v * 10 + static_cast<unsigned>(c - '0');
    }
    pos_ += n;
    return v;
  }

  void expect(char c) {
    if (!accept(c)) fail();
  }

  bool accept(char c) {
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool accept_any(std::string_view chars) {
    if (pos_ < text_.size() && chars.find(text_[pos_]) != std::string_view::npos) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool at_digit() const { return pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9'; }
  bool done() const { return pos_ == text_.size(); }

  [[noreturn]] void fail() const {
    throw FormatError("invalid RFC 3339 timestamp '" + std::string(text_) + "'");
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

double require_finite_number(const nlohmann::json& obj, const char* key, const std::string& parent) {
  const double v = detail::get_number(obj, key, parent);
  if (!std::isfinite(v)) {
    throw FormatError(detail::join_path(parent, key) + ": expected a finite number");
  }
  return v;
}

}  // namespace

std::string_view to_string(FluctuationVerdict verdict) {
  return verdict == FluctuationVerdict::Abrupt ? "Abrupt" : "Gentle";
}

bool operator==(const Contribution& a, const Contribution& b) {
  return a.name == b.name && a.value == b.value;
}

bool operator==(const ScoreRecord& a, const ScoreRecord& b) {
  return a.raw_score == b.raw_score && a.clamped_score == b.clamped_score &&
         a.contributions == b.contributions && a.timestamp == b.timestamp;
}

bool operator==(const ScoreSeries& a, const ScoreSeries& b) { return a.records_ == b.records_; }

void ScoreSeries::append(ScoreRecord record) {
  if (!records_.empty() && !(record.timestamp > records_.back().timestamp)) {
    throw OrderingError("timestamp " + format_rfc3339(record.timestamp) +
                        " is not after the last recorded " +
                        format_rfc3339(records_.back().timestamp));
  }
  if (!(record.clamped_score >= -1.0 && record.clamped_score <= 1.0)) {
    throw ValidationError("clamped", "-1 <= clamped <= 1", record.clamped_score);
  }
  records_.push_back(std::move(record));
}

FluctuationReport fluctuation(std::span<const double> scores, std::size_t window,
                              double abrupt_threshold) {
  if (window < 2) {
    throw ValidationError("window", "window >= 2", static_cast<double>(window));
  }
  if (scores.size() < window) {
    throw InsufficientDataError(window, scores.size());
  }
  const auto tail = scores.last(window);

  FluctuationReport report;
  report.window = window;
  for (std::size_t i = 1; i < tail.size(); ++i) {
    report.max_abs_delta = std::max(report.max_abs_delta, std::abs(tail[i] - tail[i - 1]));
  }
  const auto [lo, hi] = std::minmax_element(tail.begin(), tail.end());
  report.range = *hi - *lo;

  double mean = 0.0;
  for (double s : tail) mean += s;
  mean /= static_cast<double>(tail.size());
  double sq = 0.0;
  for (double s : tail) sq += (s - mean) * (s - mean);
  report.std_dev = std::sqrt(sq / static_cast<double>(tail.size()));

  report.verdict = report.max_abs_delta > abrupt_threshold ? FluctuationVerdict::Abrupt
                                                           : FluctuationVerdict::Gentle;
  return report;
}

FluctuationReport fluctuation(const ScoreSeries& series, std::size_t window,
                              double abrupt_threshold) {
  std::vector<double> scores;
  scores.reserve(series.size());
  for (const auto& r : series.records()) scores.push_back(r.clamped_score);
  return fluctuation(scores, window, abrupt_threshold);
}

std::string format_rfc3339(Timestamp t) {
  using namespace std::chrono;
  const auto ns = t.time_since_epoch().count();
  constexpr std::int64_t kPerDay = 86'400'000'000'000;
  std::int64_t days = ns / kPerDay;
  std::int64_t rem = ns % kPerDay;
  if (rem < 0) {
    rem += kPerDay;
    --days;
  }
  const auto civil = civil_from_days(days);
  const auto secs_of_day = static_cast<unsigned>(rem / 1'000'000'000);
  auto frac = static_cast<unsigned>(rem % 1'000'000'000);

  std::string out = std::to_string(civil.year);
  out.insert(0, out.size() < 4 ? 4 - out.size() : 0, '0');
  out += "-" + two(civil.month) + "-" + two(civil.day) + "T" + two(secs_of_day / 3600) + ":" +
         two(secs_of_day / 60 % 60) + ":" + two(secs_of_day % 60);
  if (frac != 0) {
    std::string digits = std::to_string(frac);
    digits.insert(0, 9 - digits.size(), '0');
    digits.erase(digits.find_last_not_of('0') + 1);
    out += "." + digits;
  }
  out += "Z";
  return out;
}

Timestamp parse_rfc3339(std::string_view text) {
  Cursor cur(text);
  const std::int64_t year = cur.digits(4);
  cur.expect('-');
  const unsigned month = cur.digits(2);
  cur.expect('-');
  const unsigned day = cur.digits(2);
  if (!cur.accept_any("Tt ")) cur.fail();
  const unsigned hour = cur.digits(2);
  cur.expect(':');
  const unsigned minute = cur.digits(2);
  cur.expect(':');
  const unsigned second = cur.digits(2);

  std::int64_t frac_ns = 0;
  if (cur.accept('.')) {
    if (!cur.at_digit()) cur.fail();
    std::int64_t scale = 100'000'000;
    while (cur.at_digit()) {
      const auto d = static_cast<std::int64_t>(cur.digits(1));
      if (scale == 0) cur.fail();  // finer than a nanosecond
      frac_ns += d * scale;
      scale /= 10;
    }
  }

  std::int64_t offset_minutes = 0;
  if (!cur.accept_any("Zz")) {
    int sign = 0;
    if (cur.accept('+')) sign = 1;
    else if (cur.accept('-')) sign = -1;
    else cur.fail();
    const unsigned oh = cur.digits(2);
    cur.expect(':');
    const unsigned om = cur.digits(2);
    if (oh > 23 || om > 59) cur.fail();
    offset_minutes = sign * static_cast<std::int64_t>(oh * 60 + om);
  }
  if (!cur.done()) cur.fail();
  if (month < 1 || month > 12 || day < 1 || day > days_in_month(year, month) || hour > 23 ||
      minute > 59 || second > 59) {
    cur.fail();
  }

  const std::int64_t seconds = days_from_civil(year, month, day) * 86'400 +
                               static_cast<std::int64_t>(hour) * 3600 + minute * 60 + second -
                               offset_minutes * 60;
  return Timestamp(std::chrono::nanoseconds(seconds * 1'000'000'000 + frac_ns));
}

std::string to_json_line(const ScoreRecord& record) {
  ojson doc;
  doc["timestamp"] = format_rfc3339(record.timestamp);
  doc["raw"] = record.raw_score;
  doc["clamped"] = record.clamped_score;
  doc["contributions"] = ojson::array();
  for (const auto& c : record.contributions) {
    ojson item;
    item["name"] = c.name;
    item["value"] = c.value;
    doc["contributions"].push_back(std::move(item));
  }
  return doc.dump();
}

ScoreRecord from_json_line(std::string_view line) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(line);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(std::string("malformed JSON: ") + e.what());
  }
  ScoreRecord record;
  record.timestamp = parse_rfc3339(detail::get_string(doc, "timestamp", ""));
  record.raw_score = require_finite_number(doc, "raw", "");
  record.clamped_score = require_finite_number(doc, "clamped", "");
  const auto& list = detail::require(doc, "contributions", "");
  if (!list.is_array()) {
    throw FormatError("contributions: expected an array");
  }
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string path = "contributions[" + std::to_string(i) + "]";
    record.contributions.push_back(
        {detail::get_string(list[i], "name", path), require_finite_number(list[i], "value", path)});
  }
  return record;
}

ScoreSeries parse_history(std::string_view jsonl) {
  ScoreSeries series;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < jsonl.size()) {
    std::size_t end = jsonl.find('\n', start);
    if (end == std::string_view::npos) end = jsonl.size();
    std::string_view line = jsonl.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++line_no;
    start = end + 1;
    if (line.find_first_not_of(" \t") == std::string_view::npos) continue;

    const std::string where = "line " + std::to_string(line_no) + ": ";
    try {
      series.append(from_json_line(line));
    } catch (const FormatError& e) {
      throw FormatError(where + e.what());
    } catch (const OrderingError& e) {
      throw OrderingError(where + e.what());
    } catch (const ValidationError& e) {
      throw e.with_prefix(where);
    }
  }
  return series;
}

std::string serialize_history(const ScoreSeries& series) {
  std::string out;
  for (const auto& r : series.records()) {
    out += to_json_line(r);
    out += '\n';
  }
  return out;
}

HistoryFile::HistoryFile(std::filesystem::path path) : path_(std::move(path)) {
  if (std::filesystem::exists(path_)) {
    const std::string text = read_text_file(path_);
    series_ = parse_history(text);
    needs_newline_ = !text.empty() && text.back() != '\n';
  }
}

HistoryFile HistoryFile::open_existing(std::filesystem::path path) {
  if (!std::filesystem::exists(path)) {
    throw IoError("history file " + path.string() + " does not exist");
  }
  return HistoryFile(std::move(path));
}

void HistoryFile::append(ScoreRecord record) {
  std::string line = to_json_line(record) + "\n";
  if (needs_newline_) line.insert(0, 1, '\n');
  series_.append(std::move(record));

  std::ofstream out(path_, std::ios::binary | std::ios::app);
  if (!out) {
    throw IoError("cannot open " + path_.string() + " for appending");
  }
  out.write(line.data(), static_cast<std::streamsize>(line.size()));
  out.flush();
  if (!out) {
    throw IoError("cannot append to " + path_.string());
  }
  needs_newline_ = false;
}

void HistoryFile::save() {
  write_text_file_atomic(path_, serialize_history(series_));
  needs_newline_ = false;
}

}  // namespace trustq
