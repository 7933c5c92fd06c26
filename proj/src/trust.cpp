#include "trustsel/trust.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "trustsel/error.hpp"

namespace trustsel {

TrustMatrix compute_trust_matrix(const ModelOutputs& outputs, double p_max) {
  if (!(p_max > 0.0) || !std::isfinite(p_max)) throw ConfigError("p_max must be positive");

  const auto& o = outputs.values();
  const std::size_t models = o.rows();
  Grid<double> trust(models, o.cols());
  for (SlotIndex t = 0; t < o.cols(); ++t) {
    for (ModelIndex i = 0; i < models; ++i) {
      double total = 0.0;
      for (ModelIndex k = 0; k < models; ++k) total += std::abs(o(i, t) - o(k, t));
      const double deviation = total / static_cast<double>(models);
      trust(i, t) = deviation > 0.0 ? std::min(p_max, 1.0 / deviation) : p_max;
    }
  }
  return TrustMatrix(std::move(trust), p_max);
}

BinaryTrustMatrix exclude_outliers(const ModelOutputs& outputs, double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw ConfigError("lambda must be positive");

  const auto& o = outputs.values();
  const double n = static_cast<double>(o.rows());
  Grid<std::uint8_t> keep(o.rows(), o.cols(), 1);
  for (SlotIndex t = 0; t < o.cols(); ++t) {
    double mean = 0.0;
    for (ModelIndex m = 0; m < o.rows(); ++m) mean += o(m, t);
    mean /= n;
    double var = 0.0;
    for (ModelIndex m = 0; m < o.rows(); ++m) var += (o(m, t) - mean) * (o(m, t) - mean);
    const double sigma = std::sqrt(var / n);
    // Identical outputs: sigma is zero, every entry equals the mean.
    if (sigma == 0.0) continue;
    const double upper = mean + lambda * sigma;
    const double lower = mean - lambda * sigma;
    for (ModelIndex m = 0; m < o.rows(); ++m) {
      if (o(m, t) > upper || o(m, t) < lower) keep(m, t) = 0;
    }
  }
  return BinaryTrustMatrix(std::move(keep));
}

std::int64_t plan_trust_score(const SelectionPlan& plan, const BinaryTrustMatrix& a) {
  if (plan.slot_count() != a.slot_count()) {
    throw InputError(fmt::format("plan covers {} slots, matrix has {}", plan.slot_count(),
                                 a.slot_count()));
  }
  std::int64_t score = 0;
  for (SlotIndex t = 0; t < plan.slot_count(); ++t) {
    const auto m = plan.assignment[t];
    if (m >= a.model_count()) throw InputError(fmt::format("slot {} selects unknown model", t));
    score += a.trusted(m, t) ? 1 : 0;
  }
  return score;
}

ValidationReport validate_plan(const SelectionPlan& plan, const BudgetConfig& config) {
  ValidationReport report;
  const auto& x = plan.assignment;

  std::size_t switches = 0;
  for (SlotIndex t = 1; t < x.size(); ++t) {
    if (x[t] == x[t - 1]) continue;
    if (++switches == config.budget + 1) {
      report.violations.push_back(
          {ViolationKind::Budget, t,
           fmt::format("{} switches exceed budget {}", count_switches(x), config.budget)});
    }
  }

  SlotIndex run_start = 0;
  for (SlotIndex t = 1; t <= x.size(); ++t) {
    if (t < x.size() && x[t] == x[run_start]) continue;
    // t == size closes the final run, which the horizon may truncate.
    if (t < x.size() && t - run_start < config.rate) {
      report.violations.push_back(
          {ViolationKind::Dwell, run_start,
           fmt::format("model {} runs {} slots from slot {}, minimum is {}", x[run_start],
                       t - run_start, run_start, config.rate)});
    }
    run_start = t;
  }
  return report;
}

}  // namespace trustsel
