#pragma once

#include <array>
#include <string_view>
#include <utility>

namespace trustq {

// State of the repeated exchange: the trustor's accumulated value and the
// trustee's net gain.
struct ExchangeState {
  double accumulated = 0.0;
  double net_gain = 0.0;
};

using Vec2 = std::array<double, 2>;
using Mat2 = std::array<Vec2, 2>;

// Linear map advancing (A, N) by one exchange:
//   A' = (1 - p) A + q N
//   N' = K p A     - q N
struct ExchangeMatrix {
  Mat2 entries{};
  double remittance_share = 0.0;
  double repayment_share = 0.0;
  double magnification = 0.0;

  double trace() const { return entries[0][0] + entries[1][1]; }
  double determinant() const {
    return entries[0][0] * entries[1][1] - entries[0][1] * entries[1][0];
  }
  Vec2 apply(const Vec2& v) const {
    return {entries[0][0] * v[0] + entries[0][1] * v[1],
            entries[1][0] * v[0] + entries[1][1] * v[1]};
  }
};

// Eigenvector normalized so its second component is 1 (or, when that is zero,
// its first component is 1).
struct EigenPair {
  double eigenvalue = 0.0;
  Vec2 eigenvector{};
};

// Line through the origin in the (N, A) plane, A = slope * N, where slope is
// the dominant eigenvector's second component over its first.
struct FairTradeLine {
  double slope = 0.0;
  double intercept = 0.0;
  EigenPair source;
};

enum class TradeBalance { Fair, TrustorFavoring, TrusteeFavoring };

inline constexpr double kDefaultFairTolerance = 1e-6;

std::string_view to_string(TradeBalance balance);

ExchangeMatrix build_matrix(double remittance_share, double repayment_share, double magnification);

// Arbitrary 2x2 matrix without exchange provenance; used for analysis and tests.
ExchangeMatrix from_entries(const Mat2& entries);

ExchangeState step_exchange(const ExchangeMatrix& matrix, const ExchangeState& state);

// |det| > 1e-12 * (max |entry|)^2
bool rows_linearly_independent(const ExchangeMatrix& matrix);

// Closed-form solution of the characteristic quadratic. Pairs are ordered by
// descending signed eigenvalue. Throws DomainError for dependent rows or
// complex eigenvalues and DegeneracyError for a repeated eigenvalue.
std::pair<EigenPair, EigenPair> eigen_decompose(const ExchangeMatrix& matrix);

// Throws DomainError when the largest eigenvalue is not positive or the line
// would be vertical.
FairTradeLine fair_trade_line(const ExchangeMatrix& matrix);
FairTradeLine line_from_eigenpair(const EigenPair& dominant);

// Position of (N, A) relative to the line. Points within
// tolerance * max(|A|, |slope * N|) of the line are Fair; above is
// TrustorFavoring and below TrusteeFavoring.
TradeBalance classify_point(const FairTradeLine& line, double net_gain, double accumulated,
                            double tolerance = kDefaultFairTolerance);

}  // namespace trustq
