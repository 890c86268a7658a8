#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "trustq/format.hpp"
#include "trustq/game_engine.hpp"

namespace trustq {

// per_cycle:   each cycle runs the single-cycle exchange on the scenario's
//              initial value with that cycle's parameters.
// closed_form: cycle n reports the generalized n-cycle totals over cycles 0..n.
enum class EvaluationMode { PerCycle, ClosedForm };

enum class Regime { AddsValue, Neutral, Inefficient, Eroding };

std::string_view to_string(EvaluationMode mode);
std::string_view to_string(Regime regime);
std::optional<EvaluationMode> parse_mode(std::string_view text);

// K > 1 AddsValue, K == 1 Neutral, 0 <= K < 1 Inefficient, K < 0 Eroding.
Regime regime_of(double magnification);

struct Scenario {
  std::string name;
  double initial_value = 0.0;
  EvaluationMode mode = EvaluationMode::PerCycle;
  std::vector<CycleParams> cycles;
};

struct TrajectoryPoint {
  std::size_t cycle = 0;
  double trustor_gain = 0.0;
  double trustee_gain = 0.0;
  std::optional<CycleLedger> ledger;  // per_cycle mode only
};

struct Trajectory {
  std::string scenario;
  EvaluationMode mode = EvaluationMode::PerCycle;
  std::vector<TrajectoryPoint> points;
};

// Throws ValidationError whose field reads "scenario '<name>': cycles[i].p".
void validate(const Scenario& scenario);

Trajectory run_scenario(const Scenario& scenario);

// {"name", "initial_value", "mode": "per_cycle"|"closed_form", "cycles": [{"p","q","K"}]}
// Unknown keys (e.g. "description") are ignored. "mode" defaults to per_cycle.
Scenario parse_scenario(std::string_view json_text);
Scenario load_scenario(const std::filesystem::path& path);

inline constexpr std::string_view kTrajectoryCsvHeader =
    "cycle,trustor_gain,trustee_gain,remittance,gain,repayment,residual";

void write_csv(std::ostream& out, const Trajectory& trajectory, int precision = kDefaultPrecision);
// Numbers are written at full (round-trip) precision.
void write_json(std::ostream& out, const Trajectory& trajectory);

}  // namespace trustq
