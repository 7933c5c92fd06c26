#include "trustsel/fixing.hpp"

#include <cmath>

#include "trustsel/error.hpp"
#include "trustsel/splice.hpp"
#include "trustsel/trust.hpp"

namespace trustsel {
namespace {

// Absorbs simplex round-off so a fractional 0.9 still clears H = 0.9.
constexpr double kThresholdSlack = 1e-9;

}  // namespace

std::vector<ModelIndex> round_assignment(const FractionalSolution& frac, double threshold) {
  const auto& x = frac.values;
  std::vector<ModelIndex> assignment(x.cols(), 0);
  std::optional<ModelIndex> carried;
  for (SlotIndex t = 0; t < x.cols(); ++t) {
    ModelIndex arg = 0;
    for (ModelIndex m = 1; m < x.rows(); ++m) {
      if (x(m, t) > x(arg, t)) arg = m;
    }
    if (x(arg, t) >= threshold - kThresholdSlack || !carried) carried = arg;
    assignment[t] = *carried;
  }
  return assignment;
}

SelectionPlan round_fractional(const FractionalSolution& frac, double threshold,
                               const BinaryTrustMatrix& a) {
  if (frac.values.rows() != a.model_count() || frac.values.cols() != a.slot_count()) {
    throw InputError("fractional solution and trust matrix differ in shape");
  }
  return make_plan(round_assignment(frac, threshold), a);
}

FixingResult fixing_run(const BinaryTrustMatrix& a, const BudgetConfig& config,
                        const FractionalSolution& frac) {
  config.validate_for(a.slot_count());

  FixingResult result;
  result.plan = splice_select(a, config);
  result.splice_score = result.plan.trust_score;
  result.lp_objective = frac.objective;

  std::optional<std::int64_t> last;
  // H = H0 - k*eps, recomputed from k to avoid drift.
  for (std::size_t k = 0;; ++k) {
    const double h = config.h0 - static_cast<double>(k) * config.eps;
    if (h <= 1e-12) break;
    auto candidate = round_fractional(frac, h, a);
    FixingStep step{h, validate_plan(candidate, config).feasible(), candidate.trust_score};
    result.sweep.push_back(step);
    if (!step.feasible) continue;
    if (candidate.trust_score > result.plan.trust_score) {
      result.plan = std::move(candidate);
      result.from_splice = false;
    }
    if (last && step.score <= *last) break;
    last = step.score;
  }
  return result;
}

FixingResult fixing_run(const BinaryTrustMatrix& a, const BudgetConfig& config) {
  return fixing_run(a, config, solve_relaxation(a, config));
}

}  // namespace trustsel
