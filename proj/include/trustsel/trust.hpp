#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "trustsel/types.hpp"

namespace trustsel {

/// Trust of model i at slot j is the reciprocal of its mean absolute distance
/// to every ensemble output at j (self included, so the mean divides by M),
/// capped at p_max. A zero mean distance saturates at p_max.
TrustMatrix compute_trust_matrix(const ModelOutputs& outputs, double p_max);

/// Per slot, marks a model untrusted when its output lies outside
/// mean +/- lambda * sigma of that slot's outputs (population sigma).
BinaryTrustMatrix exclude_outliers(const ModelOutputs& outputs, double lambda);

/// Number of slots in which the deployed model is trusted.
std::int64_t plan_trust_score(const SelectionPlan& plan, const BinaryTrustMatrix& a);

enum class ViolationKind { Budget, Dwell };

struct Violation {
  ViolationKind kind;
  // Budget: the first slot whose switch exceeds the budget.
  // Dwell: first slot of the short run.
  SlotIndex slot;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool feasible() const noexcept { return violations.empty(); }
};

/// Checks the reconfiguration budget and the minimum dwell. The final run is
/// exempt from the dwell because the horizon may truncate it.
ValidationReport validate_plan(const SelectionPlan& plan, const BudgetConfig& config);

}  // namespace trustsel
