#include "trustq/scenarios.hpp"

#include <json.hpp>

#include "json_util.hpp"
#include "trustq/errors.hpp"
#include "trustq/io.hpp"

namespace trustq {

std::string_view to_string(EvaluationMode mode) {
  return mode == EvaluationMode::PerCycle ? "per_cycle" : "closed_form";
}

std::string_view to_string(Regime regime) {
  switch (regime) {
    case Regime::AddsValue: return "AddsValue";
    case Regime::Neutral: return "Neutral";
    case Regime::Inefficient: return "Inefficient";
    case Regime::Eroding: return "Eroding";
  }
  return "unknown";
}

std::optional<EvaluationMode> parse_mode(std::string_view text) {
  if (text == "per_cycle") return EvaluationMode::PerCycle;
  if (text == "closed_form") return EvaluationMode::ClosedForm;
  return std::nullopt;
}

Regime regime_of(double magnification) {
  if (magnification > 1.0) return Regime::AddsValue;
  if (magnification == 1.0) return Regime::Neutral;
  if (magnification >= 0.0) return Regime::Inefficient;
  return Regime::Eroding;
}

void validate(const Scenario& scenario) {
  try {
    validate(GameConfig{scenario.initial_value, scenario.cycles});
  } catch (const ValidationError& e) {
    throw e.with_prefix("scenario '" + scenario.name + "': ");
  }
}

Trajectory run_scenario(const Scenario& scenario) {
  validate(scenario);

  Trajectory out;
  out.scenario = scenario.name;
  out.mode = scenario.mode;
  out.points.reserve(scenario.cycles.size());
  for (std::size_t i = 0; i < scenario.cycles.size(); ++i) {
    TrajectoryPoint point;
    point.cycle = i;
    if (scenario.mode == EvaluationMode::PerCycle) {
      const auto ledger = run_cycle(scenario.cycles[i], scenario.initial_value);
      point.trustor_gain = ledger.trustor_accumulated;
      point.trustee_gain = ledger.trustee_net;
      point.ledger = ledger;
    } else {
      const auto totals = closed_form_n_cycles(
          scenario.initial_value, std::span(scenario.cycles).first(i + 1));
      point.trustor_gain = totals.trustor;
      point.trustee_gain = totals.trustee;
    }
    out.points.push_back(point);
  }
  return out;
}

Scenario parse_scenario(std::string_view json_text) {
  const auto doc = detail::parse_json(json_text);
  Scenario s;
  s.name = detail::get_string(doc, "name", "");
  s.initial_value = detail::get_number(doc, "initial_value", "");
  if (doc.contains("mode")) {
    const std::string mode = detail::get_string(doc, "mode", "");
    auto parsed = parse_mode(mode);
    if (!parsed) {
      throw ValidationError("mode", "expected per_cycle or closed_form, got '" + mode + "'");
    }
    s.mode = *parsed;
  }
  const auto& cycles = detail::require(doc, "cycles", "");
  if (!cycles.is_array()) {
    throw FormatError("cycles: expected an array");
  }
  for (std::size_t i = 0; i < cycles.size(); ++i) {
    const std::string path = "cycles[" + std::to_string(i) + "]";
    s.cycles.push_back(CycleParams{
        .remittance_share = detail::get_number(cycles[i], "p", path),
        .repayment_share = detail::get_number(cycles[i], "q", path),
        .magnification = detail::get_number(cycles[i], "K", path),
    });
  }
  validate(s);
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  return parse_scenario(read_text_file(path));
}

void write_csv(std::ostream& out, const Trajectory& trajectory, int precision) {
  out << kTrajectoryCsvHeader << '\n';
  for (const auto& p : trajectory.points) {
    out << p.cycle << ',' << format_fixed(p.trustor_gain, precision) << ','
        << format_fixed(p.trustee_gain, precision);
    if (p.ledger) {
      out << ',' << format_fixed(p.ledger->remittance, precision) << ','
          << format_fixed(p.ledger->gain, precision) << ','
          << format_fixed(p.ledger->repayment, precision) << ','
          << format_fixed(p.ledger->residual, precision);
    } else {
      out << ",,,,";
    }
    out << '\n';
  }
}

void write_json(std::ostream& out, const Trajectory& trajectory) {
  nlohmann::ordered_json doc;
  doc["scenario"] = trajectory.scenario;
  doc["mode"] = to_string(trajectory.mode);
  doc["trajectory"] = nlohmann::ordered_json::array();
  for (const auto& p : trajectory.points) {
    nlohmann::ordered_json row;
    row["cycle"] = p.cycle;
    row["trustor_gain"] = p.trustor_gain;
    row["trustee_gain"] = p.trustee_gain;
    if (p.ledger) {
      row["remittance"] = p.ledger->remittance;
      row["gain"] = p.ledger->gain;
      row["repayment"] = p.ledger->repayment;
      row["residual"] = p.ledger->residual;
    }
    doc["trajectory"].push_back(std::move(row));
  }
  out << doc.dump(2) << '\n';
}

}  // namespace trustq
