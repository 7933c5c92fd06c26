#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "trustsel/types.hpp"

namespace trustsel {

/// Largest M*T*(B+1)*R the exact solver accepts.
inline constexpr std::size_t kOracleStateLimit = 10'000'000;

/// Exact optimum over plans with at most B switches and every run except the
/// last lasting at least R slots.
///
/// Dynamic programme over (slot, model, switches used, dwell so far capped at
/// R). Throws SizeError past kOracleStateLimit and ConfigError when
/// (B+1)*R > T.
SelectionPlan exact_select(const BinaryTrustMatrix& a, const BudgetConfig& config);

struct RatioReport {
  std::int64_t splice_score = 0;
  std::int64_t fixing_score = 0;
  std::int64_t oracle_score = 0;
  double lp_bound = 0.0;
  std::optional<double> ratio;  // splice / oracle, undefined when oracle is 0
  double ratio_bound = 0.0;     // (T + R(B+1)) / (2T)
  bool below_bound = false;
};

/// Worst-case bound on splice/optimum for the given shape.
double splice_ratio_bound(std::size_t slots, std::size_t rate, std::size_t budget);

/// Runs every solver on one instance and compares splice with the optimum.
RatioReport competitive_ratio_report(const BinaryTrustMatrix& a, const BudgetConfig& config);

}  // namespace trustsel
