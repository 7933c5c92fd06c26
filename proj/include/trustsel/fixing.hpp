#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "trustsel/relaxation.hpp"
#include "trustsel/types.hpp"

namespace trustsel {

/// Threshold rounding of a fractional solution, left to right. A slot whose
/// largest fractional value reaches `threshold` takes that model and makes it
/// the carried model; otherwise the carried model is kept. Before any model is
/// carried, the slot takes its column maximum and that model becomes the
/// carry. Column ties go to the lowest model index.
SelectionPlan round_fractional(const FractionalSolution& frac, double threshold,
                               const BinaryTrustMatrix& a);

/// Same rounding, returning only the assignment (no scoring matrix needed).
std::vector<ModelIndex> round_assignment(const FractionalSolution& frac, double threshold);

struct FixingStep {
  double threshold = 0.0;
  bool feasible = false;
  std::int64_t score = 0;
};

struct FixingResult {
  SelectionPlan plan;
  std::int64_t splice_score = 0;
  double lp_objective = 0.0;
  std::vector<FixingStep> sweep;
  bool from_splice = true;  // best plan is the splice baseline
};

/// Rounds one LP solution at H0, H0-eps, ... while the feasible rounded score
/// strictly improves, keeping the best of the sweep and the splice baseline.
/// Infeasible roundings are discarded. The returned plan is always feasible.
FixingResult fixing_run(const BinaryTrustMatrix& a, const BudgetConfig& config,
                        const FractionalSolution& frac);

/// Solves the budget-only relaxation itself.
FixingResult fixing_run(const BinaryTrustMatrix& a, const BudgetConfig& config);

inline SelectionPlan fixing_select(const BinaryTrustMatrix& a, const BudgetConfig& config) {
  return fixing_run(a, config).plan;
}

}  // namespace trustsel
