#include "trustsel/oracle.hpp"

#include <algorithm>
#include <limits>
#include <vector>

#include <fmt/format.h>

#include "trustsel/error.hpp"
#include "trustsel/fixing.hpp"
#include "trustsel/relaxation.hpp"
#include "trustsel/splice.hpp"

namespace trustsel {

SelectionPlan exact_select(const BinaryTrustMatrix& a, const BudgetConfig& config) {
  const std::size_t models = a.model_count();
  const std::size_t slots = a.slot_count();
  config.validate_for(slots);
  const std::size_t layers = config.budget + 1;
  const std::size_t dwell = config.rate;
  const std::size_t per_slot = models * layers * dwell;
  if (per_slot * slots > kOracleStateLimit) {
    throw SizeError(fmt::format("exact solver needs {} states, limit is {}", per_slot * slots,
                                kOracleStateLimit));
  }

  // d is stored zero-based: index d-1 for dwell d in 1..R.
  auto idx = [&](std::size_t m, std::size_t b, std::size_t d) {
    return (m * layers + b) * dwell + d;
  };
  constexpr std::int32_t kNone = -1;
  constexpr std::int64_t kUnreached = std::numeric_limits<std::int64_t>::min();

  std::vector<std::int64_t> cur(per_slot, kUnreached);
  std::vector<std::int64_t> next(per_slot);
  std::vector<std::int32_t> parent(per_slot * slots, kNone);

  for (std::size_t m = 0; m < models; ++m) cur[idx(m, 0, 0)] = a.trusted(m, 0) ? 1 : 0;

  for (SlotIndex t = 1; t < slots; ++t) {
    std::fill(next.begin(), next.end(), kUnreached);
    std::int32_t* from = &parent[t * per_slot];
    auto relax = [&](std::size_t to, std::size_t src, std::int64_t value) {
      if (value > next[to]) {
        next[to] = value;
        from[to] = static_cast<std::int32_t>(src);
      }
    };

    for (std::size_t m = 0; m < models; ++m) {
      const std::int64_t gain = a.trusted(m, t) ? 1 : 0;
      for (std::size_t b = 0; b < layers; ++b) {
        for (std::size_t d = 0; d < dwell; ++d) {
          const auto src = idx(m, b, d);
          if (cur[src] == kUnreached) continue;
          relax(idx(m, b, std::min(d + 1, dwell - 1)), src, cur[src] + gain);
        }
      }
    }

    // Switching needs a completed dwell; keep the two best sources per layer
    // so every target model can skip itself.
    for (std::size_t b = 0; b + 1 < layers; ++b) {
      std::size_t best = models;
      std::size_t second = models;
      for (std::size_t m = 0; m < models; ++m) {
        const auto v = cur[idx(m, b, dwell - 1)];
        if (v == kUnreached) continue;
        if (best == models || v > cur[idx(best, b, dwell - 1)]) {
          second = best;
          best = m;
        } else if (second == models || v > cur[idx(second, b, dwell - 1)]) {
          second = m;
        }
      }
      if (best == models) continue;
      for (std::size_t m = 0; m < models; ++m) {
        const std::size_t src_model = m != best ? best : second;
        if (src_model == models) continue;
        const auto src = idx(src_model, b, dwell - 1);
        relax(idx(m, b + 1, 0), src, cur[src] + (a.trusted(m, t) ? 1 : 0));
      }
    }
    std::swap(cur, next);
  }

  // The final run is exempt from the dwell, so every end state counts.
  std::size_t state = 0;
  for (std::size_t s = 1; s < per_slot; ++s) {
    if (cur[s] > cur[state]) state = s;
  }

  std::vector<ModelIndex> assignment(slots, 0);
  for (SlotIndex t = slots; t-- > 0;) {
    assignment[t] = state / (layers * dwell);
    if (t > 0) state = static_cast<std::size_t>(parent[t * per_slot + state]);
  }
  return make_plan(std::move(assignment), a);
}

double splice_ratio_bound(std::size_t slots, std::size_t rate, std::size_t budget) {
  const double t = static_cast<double>(slots);
  return (t + static_cast<double>(rate * (budget + 1))) / (2.0 * t);
}

RatioReport competitive_ratio_report(const BinaryTrustMatrix& a, const BudgetConfig& config) {
  RatioReport r;
  const auto frac = solve_relaxation(a, config);
  const auto fixing = fixing_run(a, config, frac);
  r.splice_score = fixing.splice_score;
  r.fixing_score = fixing.plan.trust_score;
  r.oracle_score = exact_select(a, config).trust_score;
  r.lp_bound = frac.objective;
  r.ratio_bound = splice_ratio_bound(a.slot_count(), config.rate, config.budget);
  if (r.oracle_score > 0) {
    r.ratio = static_cast<double>(r.splice_score) / static_cast<double>(r.oracle_score);
    r.below_bound = *r.ratio < r.ratio_bound;
  }
  return r;
}

}  // namespace trustsel
