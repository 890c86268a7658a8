#include "trustq/fair_trade.hpp"

#include <algorithm>
#include <cmath>

#include "trustq/errors.hpp"
#include "trustq/format.hpp"
#include "trustq/game_engine.hpp"

namespace trustq {
namespace {

constexpr double kIndependenceTolerance = 1e-12;
constexpr double kDegeneracyTolerance = 1e-12;

double max_abs_entry(const Mat2& m) {
  return std::max({std::abs(m[0][0]), std::abs(m[0][1]), std::abs(m[1][0]), std::abs(m[1][1])});
}

Vec2 normalize(Vec2 v) {
  const double scale = std::max(std::abs(v[0]), std::abs(v[1]));
  // Second component fixed to 1 unless it is negligible against the first.
  if (std::abs(v[1]) > 1e-14 * scale) {
    return {v[0] / v[1], 1.0};
  }
  return {1.0, 0.0};
}

// Null vector of (M - lambda I), taken from whichever row is better conditioned.
Vec2 eigenvector_for(const Mat2& m, double lambda) {
  const double a = m[0][0] - lambda;
  const double b = m[0][1];
  const double c = m[1][0];
  const double d = m[1][1] - lambda;
  Vec2 from_first{b, -a};
  Vec2 from_second{-d, c};
  const double n1 = std::hypot(a, b);
  const double n2 = std::hypot(c, d);
  if (n1 == 0.0 && n2 == 0.0) {
    return {1.0, 0.0};
  }
  return normalize(n1 >= n2 ? from_first : from_second);
}

}  // namespace

std::string_view to_string(TradeBalance balance) {
  switch (balance) {
    case TradeBalance::Fair: return "Fair";
    case TradeBalance::TrustorFavoring: return "TrustorFavoring";
    case TradeBalance::TrusteeFavoring: return "TrusteeFavoring";
  }
  return "unknown";
}

ExchangeMatrix build_matrix(double remittance_share, double repayment_share, double magnification) {
  validate(CycleParams{remittance_share, repayment_share, magnification});
  ExchangeMatrix m;
  m.entries = {{{1.0 - remittance_share, repayment_share},
                {magnification * remittance_share, -repayment_share}}};
  m.remittance_share = remittance_share;
  m.repayment_share = repayment_share;
  m.magnification = magnification;
  return m;
}

ExchangeMatrix from_entries(const Mat2& entries) {
  ExchangeMatrix m;
  m.entries = entries;
  return m;
}

ExchangeState step_exchange(const ExchangeMatrix& matrix, const ExchangeState& state) {
  const Vec2 next = matrix.apply({state.accumulated, state.net_gain});
  return {next[0], next[1]};
}

bool rows_linearly_independent(const ExchangeMatrix& matrix) {
  const double scale = max_abs_entry(matrix.entries);
  return std::abs(matrix.determinant()) > kIndependenceTolerance * scale * scale;
}

std::pair<EigenPair, EigenPair> eigen_decompose(const ExchangeMatrix& matrix) {
  if (!rows_linearly_independent(matrix)) {
    throw DomainError("matrix rows are linearly dependent");
  }
  const double trace = matrix.trace();
  const double det = matrix.determinant();
  const double discriminant = trace * trace - 4.0 * det;
  const double threshold = kDegeneracyTolerance * std::max(trace * trace, std::abs(det));

  if (discriminant < -threshold) {
    throw DomainError("complex eigenvalues: discriminant " + format_shortest(discriminant) +
                      " < 0");
  }
  if (discriminant <= threshold) {
    throw DegeneracyError("repeated eigenvalue: discriminant " + format_shortest(discriminant) +
                          " within tolerance of 0");
  }

  // Larger-magnitude root first, the other from the product of the roots,
  // to avoid cancellation.
  const double root = std::sqrt(discriminant);
  const double big = 0.5 * (trace + std::copysign(root, trace));
  const double small = det / big;
  const double hi = std::max(big, small);
  const double lo = std::min(big, small);

  EigenPair first{hi, eigenvector_for(matrix.entries, hi)};
  EigenPair second{lo, eigenvector_for(matrix.entries, lo)};
  return {first, second};
}

FairTradeLine line_from_eigenpair(const EigenPair& dominant) {
  const auto& v = dominant.eigenvector;
  if (v[0] == 0.0) {
    throw DomainError("dominant eigenvector has a zero first component: vertical line");
  }
  return FairTradeLine{.slope = v[1] / v[0], .intercept = 0.0, .source = dominant};
}

FairTradeLine fair_trade_line(const ExchangeMatrix& matrix) {
  const auto [dominant, other] = eigen_decompose(matrix);
  if (!(dominant.eigenvalue > 0.0)) {
    throw DomainError("no positive dominant eigenvalue (largest is " +
                      format_shortest(dominant.eigenvalue) + ")");
  }
  return line_from_eigenpair(dominant);
}

TradeBalance classify_point(const FairTradeLine& line, double net_gain, double accumulated,
                            double tolerance) {
  const double on_line = line.slope * net_gain + line.intercept;
  const double offset = accumulated - on_line;
  const double band = tolerance * std::max(std::abs(accumulated), std::abs(on_line));
  if (std::abs(offset) <= band) {
    return TradeBalance::Fair;
  }
  return offset > 0.0 ? TradeBalance::TrustorFavoring : TradeBalance::TrusteeFavoring;
}

}  // namespace trustq
