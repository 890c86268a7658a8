#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <charconv>
#include <sstream>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "trustq/errors.hpp"
#include "trustq/fair_trade.hpp"
#include "trustq/format.hpp"
#include "trustq/io.hpp"
#include "trustq/scenarios.hpp"
#include "trustq/score.hpp"
#include "trustq/score_io.hpp"
#include "trustq/timeseries.hpp"

namespace trustq::cli {
namespace {

using ojson = nlohmann::ordered_json;

enum class OutputFormat { Text, Csv, Json };

struct SharedOptions {
  std::string out_path;
  std::string format;
  int precision = kDefaultPrecision;

  OutputFormat output_format(OutputFormat fallback) const {
    if (format == "csv") return OutputFormat::Csv;
    if (format == "json") return OutputFormat::Json;
    return fallback;
  }
  std::string num(double v) const { return format_fixed(v, precision); }
};

void add_shared(CLI::App& cmd, SharedOptions& shared) {
  cmd.add_option("--out", shared.out_path, "Write the result to this file");
  cmd.add_option("--format", shared.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd.add_option("--precision", shared.precision, "Fractional digits for printed numbers")
      ->check(CLI::Range(0, 17));
}

// Writes `body` to --out when given, otherwise to `out`.
void emit(const SharedOptions& shared, const std::string& body, std::ostream& out) {
  if (shared.out_path.empty()) {
    out << body;
  } else {
    write_text_file_atomic(shared.out_path, body);
  }
}

std::string one_line(std::string text) {
  std::replace(text.begin(), text.end(), '\n', ' ');
  return text;
}

// ----------------------------------------------------------------------------
// simulate

struct SimulateArgs {
  std::string scenario_path;
  SharedOptions shared;
};

void cmd_simulate(const SimulateArgs& args, std::ostream& out) {
  const Scenario scenario = load_scenario(args.scenario_path);
  const Trajectory trajectory = run_scenario(scenario);

  std::ostringstream body;
  if (args.shared.output_format(OutputFormat::Csv) == OutputFormat::Json) {
    write_json(body, trajectory);
  } else {
    write_csv(body, trajectory, args.shared.precision);
  }

  if (args.shared.out_path.empty()) {
    out << body.str();
    return;
  }
  write_text_file_atomic(args.shared.out_path, body.str());

  const auto& last = trajectory.points.back();
  out << "scenario: " << scenario.name << '\n'
      << "mode: " << to_string(scenario.mode) << '\n'
      << "cycles: " << trajectory.points.size() << '\n'
      << "final trustor_gain: " << args.shared.num(last.trustor_gain) << '\n'
      << "final trustee_gain: " << args.shared.num(last.trustee_gain) << '\n'
      << "regime: " << to_string(regime_of(scenario.cycles.back().magnification)) << '\n'
      << "written: " << args.shared.out_path << '\n';
}

// ----------------------------------------------------------------------------
// score

struct ScoreArgs {
  std::string metrics_path;
  std::string weights_path;
  std::string history_path;
  bool normalize_counts = false;
  SharedOptions shared;
};

void cmd_score(const ScoreArgs& args, std::ostream& out) {
  const auto metrics = load_metrics(args.metrics_path);
  const auto weights = load_weights(args.weights_path);
  const ScoreOptions options{.normalize_counts = args.normalize_counts};

  const auto timestamp = std::chrono::time_point_cast<std::chrono::nanoseconds>(
      std::chrono::system_clock::now());
  ScoreRecord record = trust_score(metrics, weights, timestamp, options);
  const auto breakdown = category_breakdown(record, metrics);

  std::vector<std::string> warnings;
  const auto report = validate_metrics(metrics);
  if (report.outcome_sum_exceeds_one) {
    warnings.push_back("outcome fractions sum to " + format_shortest(*report.outcome_sum) +
                       ", exceeding 1");
  }
  for (auto& w : weight_warnings(weights)) warnings.push_back(std::move(w));

  // Append before printing so a history failure leaves no partial report.
  if (!args.history_path.empty()) {
    HistoryFile history(args.history_path);
    history.append(record);
  }

  const auto& s = args.shared;
  std::ostringstream body;
  switch (s.output_format(OutputFormat::Text)) {
    case OutputFormat::Text:
      body << "raw score: " << s.num(record.raw_score) << '\n'
           << "clamped score: " << s.num(record.clamped_score) << '\n'
           << "category breakdown:\n";
      for (const auto& [category, subtotal] : breakdown) {
        body << "  " << to_string(category) << ": " << s.num(subtotal) << '\n';
      }
      for (const auto& w : warnings) body << "warning: " << w << '\n';
      break;
    case OutputFormat::Csv:
      body << "raw_score,clamped_score";
      for (const auto& [category, subtotal] : breakdown) body << ',' << to_string(category);
      body << '\n' << s.num(record.raw_score) << ',' << s.num(record.clamped_score);
      for (const auto& [category, subtotal] : breakdown) body << ',' << s.num(subtotal);
      body << '\n';
      break;
    case OutputFormat::Json: {
      ojson doc;
      doc["raw_score"] = record.raw_score;
      doc["clamped_score"] = record.clamped_score;
      doc["categories"] = ojson::object();
      for (const auto& [category, subtotal] : breakdown) {
        doc["categories"][std::string(to_string(category))] = subtotal;
      }
      doc["warnings"] = warnings;
      body << doc.dump(2) << '\n';
      break;
    }
  }
  emit(s, body.str(), out);
}

// ----------------------------------------------------------------------------
// fairtrade

struct FairTradeArgs {
  double remittance_share = 0.0;
  double repayment_share = 0.0;
  double magnification = 0.0;
  std::string point;
  double tolerance = kDefaultFairTolerance;
  SharedOptions shared;
};

struct Point {
  double net_gain;
  double accumulated;
};

Point parse_point(const std::string& text) {
  const auto comma = text.find(',');
  auto parse = [&](std::string_view part) {
    double v = 0.0;
    const auto* first = part.data();
    const auto* last = part.data() + part.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last || part.empty()) {
      throw ValidationError("--point", "expected N,A as two numbers, got '" + text + "'");
    }
    return v;
  };
  if (comma == std::string::npos) {
    throw ValidationError("--point", "expected N,A as two numbers, got '" + text + "'");
  }
  const std::string_view view(text);
  return {parse(view.substr(0, comma)), parse(view.substr(comma + 1))};
}

void cmd_fairtrade(const FairTradeArgs& args, std::ostream& out) {
  if (!(args.tolerance >= 0.0)) {
    throw ValidationError("--tolerance", "tolerance >= 0", args.tolerance);
  }
  const auto matrix = build_matrix(args.remittance_share, args.repayment_share, args.magnification);
  const bool independent = rows_linearly_independent(matrix);
  const auto [first, second] = eigen_decompose(matrix);
  const auto line = fair_trade_line(matrix);
  std::optional<Point> point;
  std::optional<TradeBalance> balance;
  if (!args.point.empty()) {
    point = parse_point(args.point);
    balance = classify_point(line, point->net_gain, point->accumulated, args.tolerance);
  }

  const auto& s = args.shared;
  const auto& m = matrix.entries;
  std::ostringstream body;
  switch (s.output_format(OutputFormat::Text)) {
    case OutputFormat::Text:
      body << "matrix: [[" << s.num(m[0][0]) << ", " << s.num(m[0][1]) << "], [" << s.num(m[1][0])
           << ", " << s.num(m[1][1]) << "]]\n"
           << "rows linearly independent: " << (independent ? "yes" : "no") << '\n'
           << "lambda1: " << s.num(first.eigenvalue) << '\n'
           << "lambda2: " << s.num(second.eigenvalue) << '\n'
           << "eigenvector1: (" << s.num(first.eigenvector[0]) << ", "
           << s.num(first.eigenvector[1]) << ")\n"
           << "eigenvector2: (" << s.num(second.eigenvector[0]) << ", "
           << s.num(second.eigenvector[1]) << ")\n"
           << "line: y = " << s.num(line.slope) << " x\n";
      if (point) {
        body << "point (" << s.num(point->net_gain) << ", " << s.num(point->accumulated)
             << "): " << to_string(*balance) << '\n';
      }
      break;
    case OutputFormat::Csv:
      body << "p,q,K,independent,lambda1,lambda2,eigenvector1_first,eigenvector1_second,"
              "eigenvector2_first,eigenvector2_second,slope,intercept";
      if (point) body << ",N,A,classification";
      body << '\n'
           << s.num(matrix.remittance_share) << ',' << s.num(matrix.repayment_share) << ','
           << s.num(matrix.magnification) << ',' << (independent ? "true" : "false") << ','
           << s.num(first.eigenvalue) << ',' << s.num(second.eigenvalue) << ','
           << s.num(first.eigenvector[0]) << ',' << s.num(first.eigenvector[1]) << ','
           << s.num(second.eigenvector[0]) << ',' << s.num(second.eigenvector[1]) << ','
           << s.num(line.slope) << ',' << s.num(line.intercept);
      if (point) {
        body << ',' << s.num(point->net_gain) << ',' << s.num(point->accumulated) << ','
             << to_string(*balance);
      }
      body << '\n';
      break;
    case OutputFormat::Json: {
      ojson doc;
      doc["matrix"] = {{m[0][0], m[0][1]}, {m[1][0], m[1][1]}};
      doc["rows_linearly_independent"] = independent;
      doc["eigenpairs"] = {
          {{"eigenvalue", first.eigenvalue}, {"eigenvector", first.eigenvector}},
          {{"eigenvalue", second.eigenvalue}, {"eigenvector", second.eigenvector}}};
      doc["line"] = {{"slope", line.slope}, {"intercept", line.intercept}};
      if (point) {
        doc["point"] = {{"N", point->net_gain},
                        {"A", point->accumulated},
                        {"classification", std::string(to_string(*balance))}};
      }
      body << doc.dump(2) << '\n';
      break;
    }
  }
  emit(s, body.str(), out);
}

// ----------------------------------------------------------------------------
// history

struct HistoryArgs {
  std::string path;
  std::size_t window = kDefaultWindow;
  double threshold = kDefaultAbruptThreshold;
  SharedOptions shared;
};

void cmd_history(const HistoryArgs& args, std::ostream& out) {
  const auto history = HistoryFile::open_existing(args.path);
  const auto report = fluctuation(history.series(), args.window, args.threshold);

  const auto& s = args.shared;
  std::ostringstream body;
  switch (s.output_format(OutputFormat::Text)) {
    case OutputFormat::Text:
      body << "records: " << history.series().size() << '\n'
           << "window: " << report.window << '\n'
           << "max_abs_delta: " << s.num(report.max_abs_delta) << '\n'
           << "range: " << s.num(report.range) << '\n'
           << "std_dev: " << s.num(report.std_dev) << '\n'
           << "verdict: " << to_string(report.verdict) << '\n';
      break;
    case OutputFormat::Csv:
      body << "window,max_abs_delta,range,std_dev,verdict\n"
           << report.window << ',' << s.num(report.max_abs_delta) << ',' << s.num(report.range)
           << ',' << s.num(report.std_dev) << ',' << to_string(report.verdict) << '\n';
      break;
    case OutputFormat::Json: {
      ojson doc;
      doc["window"] = report.window;
      doc["max_abs_delta"] = report.max_abs_delta;
      doc["range"] = report.range;
      doc["std_dev"] = report.std_dev;
      doc["verdict"] = std::string(to_string(report.verdict));
      body << doc.dump(2) << '\n';
      break;
    }
  }
  emit(s, body.str(), out);
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Trust quantification for AI/ML services", "trustq"};
  app.require_subcommand(1);

  SimulateArgs simulate;
  auto* sim = app.add_subcommand("simulate", "Run a trust-game scenario file");
  sim->add_option("scenario", simulate.scenario_path, "Scenario JSON file")->required();
  add_shared(*sim, simulate.shared);

  ScoreArgs score;
  auto* sc = app.add_subcommand("score", "Compute the trust score of a metric/weight pair");
  sc->add_option("metrics", score.metrics_path, "Metric JSON file")->required();
  sc->add_option("weights", score.weights_path, "Weight JSON file")->required();
  sc->add_option("--history", score.history_path, "Append the record to this JSONL history");
  sc->add_flag("--normalize-counts", score.normalize_counts,
               "Map count metrics with a cap to min(count / cap, 1)");
  add_shared(*sc, score.shared);

  FairTradeArgs fair;
  auto* ft = app.add_subcommand("fairtrade", "Eigen-analysis of the exchange matrix");
  ft->add_option("--p", fair.remittance_share, "Remittance share")->required();
  ft->add_option("--q", fair.repayment_share, "Repayment share")->required();
  ft->add_option("--K", fair.magnification, "Magnification factor")->required();
  ft->add_option("--point", fair.point, "Classify the point N,A against the fair-trade line");
  ft->add_option("--tolerance", fair.tolerance, "Relative half-width of the fair band");
  add_shared(*ft, fair.shared);

  HistoryArgs history;
  auto* hi = app.add_subcommand("history", "Fluctuation report over a score history");
  hi->add_option("history", history.path, "JSONL history file")->required();
  hi->add_option("--window", history.window, "Trailing window length");
  hi->add_option("--threshold", history.threshold, "Largest step still considered gentle");
  add_shared(*hi, history.shared);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      return app.exit(e, out, err);
    }
    err << "trustq: error: " << one_line(e.what()) << '\n';
    return static_cast<int>(ExitStatus::IoOrFormat);
  }

  try {
    if (sim->parsed()) cmd_simulate(simulate, out);
    else if (sc->parsed()) cmd_score(score, out);
    else if (ft->parsed()) cmd_fairtrade(fair, out);
    else if (hi->parsed()) cmd_history(history, out);
    return static_cast<int>(ExitStatus::Success);
  } catch (const FormatError& e) {
    err << "trustq: error: " << one_line(e.what()) << '\n';
    return static_cast<int>(ExitStatus::IoOrFormat);
  } catch (const IoError& e) {
    err << "trustq: error: " << one_line(e.what()) << '\n';
    return static_cast<int>(ExitStatus::IoOrFormat);
  } catch (const Error& e) {
    err << "trustq: error: " << one_line(e.what()) << '\n';
    return static_cast<int>(ExitStatus::Invalid);
  } catch (const std::filesystem::filesystem_error& e) {
    err << "trustq: error: " << one_line(e.what()) << '\n';
    return static_cast<int>(ExitStatus::IoOrFormat);
  }
}

}  // namespace trustq::cli
