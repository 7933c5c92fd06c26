#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "support/fixtures.hpp"
#include "trustsel/attack.hpp"
#include "trustsel/error.hpp"
#include "trustsel/trust.hpp"

using namespace trustsel;

TEST(Percentile, ListGoldens) {
  const auto list = ref::percentile_list();
  EXPECT_EQ(percentile_value(list, 20), 174);
  EXPECT_EQ(percentile_value(list, 80), 188);
}

TEST(Percentile, SingleElement) {
  const std::vector<double> one{42.0};
  for (double x : {1.0, 20.0, 50.0, 99.0}) EXPECT_EQ(percentile_value(one, x), 42.0);
}

TEST(Percentile, RankRounding) {
  const std::vector<double> v{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  EXPECT_EQ(percentile_value(v, 20), 2);
  EXPECT_EQ(percentile_value(v, 80), 8);
  EXPECT_EQ(percentile_value(v, 25), 3);  // 2.5 rounds up
  EXPECT_EQ(percentile_value(v, 1), 1);   // clamped to rank 1
}

TEST(Percentile, Errors) {
  const std::vector<double> empty;
  EXPECT_THROW(percentile_value(empty, 20), InputError);
  const std::vector<double> v{1, 2};
  EXPECT_THROW(percentile_value(v, 0), InputError);
  EXPECT_THROW(percentile_value(v, 100), InputError);
}

TEST(Swap, ListExchangesAllOccurrences) {
  const auto list = ref::percentile_list();
  const auto out = swap_percentile_attack(list, 20, {0, list.size()}, SwapMode::Exact);
  EXPECT_EQ(out.series, (std::vector<double>{180, 188, 192, 174, 170, 185, 188, 174, 178, 195}));
  EXPECT_EQ(out.low_value, 174);
  EXPECT_EQ(out.high_value, 188);
}

TEST(Swap, AutoPicksExactForRepeatedValues) {
  const auto list = ref::percentile_list();
  EXPECT_EQ(swap_percentile_attack(list, 20, {0, list.size()}).applied, SwapMode::Exact);
}

TEST(Swap, OneToTen) {
  const std::vector<double> v{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  const auto out = swap_percentile_attack(v, 20, {0, 10}, SwapMode::Exact);
  EXPECT_EQ(out.series, (std::vector<double>{1, 8, 3, 4, 5, 6, 7, 2, 9, 10}));
}

TEST(Swap, ConstantSeriesUnchanged) {
  const std::vector<double> v(8, 3.0);
  const auto out = swap_percentile_attack(v, 20, {0, 8});
  EXPECT_TRUE(out.degenerate);
  EXPECT_EQ(out.series, v);
}

TEST(Swap, RegionRestricts) {
  const std::vector<double> v{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  const auto out = swap_percentile_attack(v, 20, {0, 5}, SwapMode::Exact);
  EXPECT_EQ(out.series, (std::vector<double>{1, 8, 3, 4, 5, 6, 7, 8, 9, 10}));
  EXPECT_THROW(swap_percentile_attack(v, 20, {5, 11}), InputError);
  EXPECT_THROW(swap_percentile_attack(v, 50, {0, 10}), InputError);
}

TEST(Swap, ReflectTails) {
  const std::vector<double> v{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  // lo = 2, hi = 8: 1 -> 9, 2 -> 8, 8 -> 2, 9 -> 1, 10 -> 0, middle untouched.
  const auto out = swap_percentile_attack(v, 20, {0, 10}, SwapMode::Reflect);
  EXPECT_EQ(out.series, (std::vector<double>{9, 8, 3, 4, 5, 6, 7, 2, 1, 0}));
}

// Exact swap applied twice restores the input.
TEST(Swap, ExactIsInvolution) {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> value(0, 12);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<double> v(std::uniform_int_distribution<std::size_t>(1, 30)(rng));
    for (auto& x : v) x = value(rng);
    const std::size_t b = std::uniform_int_distribution<std::size_t>(0, v.size())(rng);
    const std::size_t e = std::uniform_int_distribution<std::size_t>(b, v.size())(rng);
    const double lo = percentile_value(v, 20), hi = percentile_value(v, 80);
    const auto once = swap_values(v, lo, hi, {b, e});
    EXPECT_EQ(swap_values(once, lo, hi, {b, e}), v) << "trial " << trial;
  }
}

TEST(Generator, Deterministic) {
  InstanceSpec spec;
  spec.seed = 77;
  const auto a = generate_instance(spec);
  const auto b = generate_instance(spec);
  EXPECT_EQ(a.outputs.values(), b.outputs.values());
  EXPECT_EQ(a.malicious, b.malicious);
  EXPECT_EQ(a.poisoned, b.poisoned);
  spec.seed = 78;
  EXPECT_NE(generate_instance(spec).outputs.values(), a.outputs.values());
}

TEST(Generator, Shape) {
  InstanceSpec spec;
  spec.models = 5;
  spec.slots = 40;
  spec.malicious = 2;
  const auto g = generate_instance(spec);
  EXPECT_EQ(g.outputs.model_count(), 5u);
  EXPECT_EQ(g.outputs.slot_count(), 40u);
  EXPECT_EQ(g.ground_truth.size(), 40u);
  ASSERT_EQ(g.malicious.size(), 2u);
  EXPECT_TRUE(std::is_sorted(g.malicious.begin(), g.malicious.end()));
  for (const auto& r : g.poisoned) {
    EXPECT_EQ(r.size(), 8u);
    EXPECT_LE(r.end, 40u);
  }
}

TEST(Generator, RejectsBadSpec) {
  InstanceSpec spec;
  spec.malicious = 9;
  EXPECT_THROW(generate_instance(spec), ConfigError);
  spec = {};
  spec.attack_percentile = 60;
  EXPECT_THROW(generate_instance(spec), ConfigError);
}

// No attack: with lambda above sqrt(M-1) no model can leave the band, and
// at 2.5 with seven models the matrix is all ones.
TEST(Generator, CleanEnsembleTrusted) {
  std::size_t ones = 0, total = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    InstanceSpec spec;
    spec.malicious = 0;
    spec.seed = seed;
    const auto a = exclude_outliers(generate_instance(spec).outputs, 2.5);
    for (std::size_t m = 0; m < a.model_count(); ++m)
      for (std::size_t t = 0; t < a.slot_count(); ++t) ones += a.trusted(m, t) ? 1 : 0;
    total += a.model_count() * a.slot_count();
  }
  EXPECT_GE(static_cast<double>(ones), 0.99 * static_cast<double>(total));
}

// Strong attack, pooled over seeds: most poisoned entries of the malicious
// row are excluded, and clearly more often than benign rows in the same slots.
// Per seed the region is majority-zero only about half the time, because
// lambda = 0.85 also excludes roughly 40% of benign entries and only the
// tails of the region move.
TEST(Generator, StrongAttackDetected) {
  std::size_t poisoned_zero = 0, poisoned_total = 0, benign_zero = 0, benign_total = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    InstanceSpec spec;
    spec.malicious = 1;
    spec.attack_percentile = 5;
    spec.seed = seed;
    const auto g = generate_instance(spec);
    const auto a = exclude_outliers(g.outputs, 0.85);
    const auto bad = g.malicious.front();
    const auto r = g.poisoned.front();
    for (ModelIndex m = 0; m < a.model_count(); ++m) {
      const auto zeros = r.size() - a.row_sum(m, r.begin, r.end);
      (m == bad ? poisoned_zero : benign_zero) += zeros;
      (m == bad ? poisoned_total : benign_total) += r.size();
    }
  }
  const double poisoned = static_cast<double>(poisoned_zero) / static_cast<double>(poisoned_total);
  const double benign = static_cast<double>(benign_zero) / static_cast<double>(benign_total);
  EXPECT_GT(poisoned, 0.5);
  EXPECT_GT(poisoned, benign + 0.05);
}
