#include "trustq/game_engine.hpp"

#include <cmath>
#include <string>

#include "trustq/errors.hpp"

namespace trustq {
namespace {

void require_finite(const char* field, double value) {
  if (!std::isfinite(value)) {
    throw ValidationError(field, "a finite value", value);
  }
}

// Splits `whole` into (share * whole, (1 - share) * whole) such that the two
// parts add back to `whole` exactly. The larger part is the rounded product
// and the smaller is its complement, which is exact by Sterbenz's lemma.
struct Split {
  double taken;
  double kept;
};

Split split(double whole, double share) {
  if (share >= 0.5) {
    const double taken = share * whole;
    return {taken, whole - taken};
  }
  const double kept = (1.0 - share) * whole;
  return {whole - kept, kept};
}

}  // namespace

void validate_remittance_share(double share) {
  require_finite("p", share);
  if (share < 0.0 || share > 1.0) {
    throw ValidationError("p", "0 <= p <= 1", share);
  }
}

void validate_repayment_share(double share) {
  require_finite("q", share);
  if (share < 0.0 || share >= 1.0) {
    throw ValidationError("q", "0 <= q < 1", share);
  }
}

void validate_offered_value(double value) {
  require_finite("initial_value", value);
  if (value <= 0.0) {
    throw ValidationError("initial_value", "initial_value > 0", value);
  }
}

void validate_magnification(double magnification) { require_finite("K", magnification); }

void validate(const CycleParams& params) {
  validate_remittance_share(params.remittance_share);
  validate_repayment_share(params.repayment_share);
  validate_magnification(params.magnification);
}

void validate(const GameConfig& config) {
  validate_offered_value(config.initial_value);
  if (config.cycles.empty()) {
    throw ValidationError("cycles", "must contain at least one cycle");
  }
  for (std::size_t i = 0; i < config.cycles.size(); ++i) {
    try {
      validate(config.cycles[i]);
    } catch (const ValidationError& e) {
      throw e.with_prefix("cycles[" + std::to_string(i) + "].");
    }
  }
}

double remittance(double remittance_share, double offered_value) {
  validate_remittance_share(remittance_share);
  validate_offered_value(offered_value);
  return remittance_share * offered_value;
}

double perceived_gain(double magnification, double remittance) {
  validate_magnification(magnification);
  require_finite("remittance", remittance);
  return magnification * remittance;
}

double repayment(double repayment_share, double gain) {
  validate_repayment_share(repayment_share);
  require_finite("gain", gain);
  return repayment_share * gain;
}

double residual(double remittance_share, double offered_value) {
  validate_remittance_share(remittance_share);
  validate_offered_value(offered_value);
  return (1.0 - remittance_share) * offered_value;
}

CycleLedger run_cycle(const CycleParams& params, double offered_value) {
  validate(params);
  validate_offered_value(offered_value);

  CycleLedger ledger;
  const auto delivered = split(offered_value, params.remittance_share);
  ledger.remittance = delivered.taken;
  ledger.residual = delivered.kept;
  ledger.gain = params.magnification * ledger.remittance;
  const auto returned = split(ledger.gain, params.repayment_share);
  ledger.repayment = returned.taken;
  ledger.trustee_net = returned.kept;
  ledger.trustor_accumulated = ledger.residual + ledger.repayment;
  return ledger;
}

Holdings closed_form_n_cycles(const GameConfig& config) {
  return closed_form_n_cycles(config.initial_value, config.cycles);
}

Holdings closed_form_n_cycles(double initial_value, std::span<const CycleParams> cycles) {
  validate(GameConfig{initial_value, {cycles.begin(), cycles.end()}});

  double sum_p = 0.0;
  double sum_q = 0.0;
  double sum_k = 0.0;
  for (const auto& c : cycles) {
    sum_p += c.remittance_share;
    sum_q += c.repayment_share;
    sum_k += c.magnification;
  }
  return Holdings{
      .trustor = initial_value * (1.0 - sum_p + sum_q * sum_k * sum_p),
      .trustee = initial_value * (1.0 - sum_q) * sum_k * sum_p,
  };
}

ThresholdCheck check_threshold(double remittance_share, double offered_value, double magnification,
                               double threshold) {
  ThresholdCheck check;
  check.threshold = threshold;
  check.remittance_value = remittance_share * offered_value;
  check.magnification = magnification;
  check.remittance_ok = check.remittance_value >= threshold;
  check.magnification_ok = magnification >= 1.0;
  check.satisfied = check.remittance_ok && check.magnification_ok;
  return check;
}

}  // namespace trustq
