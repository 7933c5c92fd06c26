#include "trustsel/types.hpp"

#include <cmath>
#include <string>
#include <unordered_set>

#include <fmt/format.h>

#include "trustsel/error.hpp"

namespace trustsel {

ModelOutputs::ModelOutputs(std::vector<std::string> model_ids, Grid<double> values)
    : ids_(std::move(model_ids)), values_(std::move(values)) {
  if (values_.rows() == 0 || values_.cols() == 0) {
    throw InputError("model outputs need at least one model and one slot");
  }
  if (ids_.size() != values_.rows()) {
    throw InputError(fmt::format("{} model ids for {} rows", ids_.size(), values_.rows()));
  }
  std::unordered_set<std::string> seen;
  for (const auto& id : ids_) {
    if (!seen.insert(id).second) {
      throw InputError(fmt::format("duplicate model id '{}'", id));
    }
  }
  for (std::size_t m = 0; m < values_.rows(); ++m) {
    for (std::size_t t = 0; t < values_.cols(); ++t) {
      if (!std::isfinite(values_(m, t))) {
        throw InputError(fmt::format("non-finite output for model '{}' at slot {}", ids_[m], t));
      }
    }
  }
}

ModelOutputs ModelOutputs::with_default_ids(Grid<double> values) {
  std::vector<std::string> ids;
  ids.reserve(values.rows());
  for (std::size_t m = 0; m < values.rows(); ++m) ids.push_back(fmt::format("m{}", m));
  return ModelOutputs(std::move(ids), std::move(values));
}

TrustMatrix::TrustMatrix(Grid<double> values, double p_max)
    : values_(std::move(values)), p_max_(p_max) {
  if (!(p_max_ > 0.0) || !std::isfinite(p_max_)) {
    throw ConfigError("p_max must be positive and finite");
  }
  for (double v : values_.data()) {
    if (!(v >= 0.0 && v <= p_max_)) throw InputError("trust level outside [0, p_max]");
  }
}

BinaryTrustMatrix::BinaryTrustMatrix(Grid<std::uint8_t> values) : values_(std::move(values)) {
  if (values_.rows() == 0 || values_.cols() == 0) {
    throw InputError("binary trust matrix needs at least one model and one slot");
  }
  for (auto v : values_.data()) {
    if (v > 1) throw InputError("binary trust matrix entries must be 0 or 1");
  }
}

BinaryTrustMatrix BinaryTrustMatrix::from_rows(const std::vector<std::vector<int>>& rows) {
  if (rows.empty() || rows.front().empty()) {
    throw InputError("binary trust matrix needs at least one model and one slot");
  }
  Grid<std::uint8_t> g(rows.size(), rows.front().size());
  for (std::size_t m = 0; m < rows.size(); ++m) {
    if (rows[m].size() != g.cols()) throw InputError("ragged binary trust matrix");
    for (std::size_t t = 0; t < g.cols(); ++t) {
      const int v = rows[m][t];
      if (v != 0 && v != 1) throw InputError("binary trust matrix entries must be 0 or 1");
      g(m, t) = static_cast<std::uint8_t>(v);
    }
  }
  return BinaryTrustMatrix(std::move(g));
}

std::size_t BinaryTrustMatrix::row_sum(ModelIndex m, SlotIndex begin, SlotIndex end) const {
  std::size_t sum = 0;
  const auto r = values_.row(m);
  for (SlotIndex t = begin; t < end; ++t) sum += r[t];
  return sum;
}

std::vector<SlotIndex> BinaryTrustMatrix::failsafe_slots() const {
  std::vector<SlotIndex> slots;
  for (SlotIndex t = 0; t < slot_count(); ++t) {
    bool any = false;
    for (ModelIndex m = 0; m < model_count() && !any; ++m) any = trusted(m, t);
    if (!any) slots.push_back(t);
  }
  return slots;
}

std::size_t count_switches(const std::vector<ModelIndex>& assignment) {
  std::size_t n = 0;
  for (std::size_t t = 1; t < assignment.size(); ++t) {
    if (assignment[t] != assignment[t - 1]) ++n;
  }
  return n;
}

SelectionPlan make_plan(std::vector<ModelIndex> assignment, const BinaryTrustMatrix& a) {
  if (assignment.size() != a.slot_count()) {
    throw InputError(fmt::format("plan covers {} slots, matrix has {}", assignment.size(),
                                 a.slot_count()));
  }
  SelectionPlan plan;
  plan.trust_score = 0;
  for (SlotIndex t = 0; t < assignment.size(); ++t) {
    if (assignment[t] >= a.model_count()) {
      throw InputError(fmt::format("slot {} selects model {} of {}", t, assignment[t],
                                   a.model_count()));
    }
    plan.trust_score += a.trusted(assignment[t], t) ? 1 : 0;
  }
  plan.switch_count = count_switches(assignment);
  plan.failsafe_slots = a.failsafe_slots();
  plan.assignment = std::move(assignment);
  return plan;
}

void BudgetConfig::validate() const {
  if (rate < 1) throw ConfigError("rate R must be at least 1");
  if (!(p_max > 0.0) || !std::isfinite(p_max)) throw ConfigError("p_max must be positive");
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw ConfigError("lambda must be positive");
  if (!(h0 > 0.0 && h0 < 1.0)) throw ConfigError("H0 must lie in (0, 1)");
  if (!(eps > 0.0 && eps < 0.1)) throw ConfigError("eps must lie in (0, 0.1)");
}

void BudgetConfig::validate_for(std::size_t slot_count) const {
  validate();
  if ((budget + 1) * rate > slot_count) {
    throw ConfigError(fmt::format("(B+1)*R = {} exceeds the {} available slots",
                                  (budget + 1) * rate, slot_count));
  }
}

}  // namespace trustsel
