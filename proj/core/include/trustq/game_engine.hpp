#pragma once

#include <span>
#include <vector>

namespace trustq {

// One round of the trustor -> trustee -> trustor exchange.
//  remittance_share: fraction of the offered value actually delivered, in [0, 1].
//  repayment_share:  fraction of the perceived gain returned, in [0, 1).
//  magnification:    trustee-side multiplier on delivered value; any finite real.
struct CycleParams {
  double remittance_share = 0.0;
  double repayment_share = 0.0;
  double magnification = 1.0;
};

struct GameConfig {
  double initial_value = 0.0;
  std::vector<CycleParams> cycles;
};

// Everything booked during one cycle. Both partitions close exactly:
// remittance + residual == offered value and trustee_net + repayment == gain.
struct CycleLedger {
  double remittance = 0.0;
  double gain = 0.0;
  double repayment = 0.0;
  double residual = 0.0;
  double trustor_accumulated = 0.0;
  double trustee_net = 0.0;
};

struct Holdings {
  double trustor = 0.0;
  double trustee = 0.0;
};

// Outcome of the engagement threshold test. Both conditions are exposed so
// callers can weigh a large magnification against a short remittance.
struct ThresholdCheck {
  double threshold = 0.0;
  double remittance_value = 0.0;
  double magnification = 0.0;
  bool remittance_ok = false;
  bool magnification_ok = false;
  bool satisfied = false;
};

// Throw ValidationError naming the offending field.
void validate_remittance_share(double share);
void validate_repayment_share(double share);
void validate_offered_value(double value);
void validate_magnification(double magnification);
void validate(const CycleParams& params);
void validate(const GameConfig& config);

double remittance(double remittance_share, double offered_value);
double perceived_gain(double magnification, double remittance);
double repayment(double repayment_share, double gain);
double residual(double remittance_share, double offered_value);

CycleLedger run_cycle(const CycleParams& params, double offered_value);

// Generalized n-cycle totals evaluated as products of per-parameter sums:
//   trustor = V * (1 - sum(p) + sum(q) * sum(K) * sum(p))
//   trustee = V * (1 - sum(q)) * sum(K) * sum(p)
// For n > 1 this does not agree with iterating run_cycle; see scenarios.
Holdings closed_form_n_cycles(const GameConfig& config);
Holdings closed_form_n_cycles(double initial_value, std::span<const CycleParams> cycles);

ThresholdCheck check_threshold(double remittance_share, double offered_value, double magnification,
                               double threshold);

}  // namespace trustq
