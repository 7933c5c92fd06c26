#include <gtest/gtest.h>

#include <random>

#include "support/fixtures.hpp"
#include "support/oracles.hpp"
#include "trustsel/error.hpp"
#include "trustsel/splice.hpp"
#include "trustsel/trust.hpp"

using namespace trustsel;

namespace {

BudgetConfig config(std::size_t budget, std::size_t rate) {
  BudgetConfig c;
  c.budget = budget;
  c.rate = rate;
  return c;
}

}  // namespace

TEST(LongestRun, SingleRowFillsSegment) {
  const auto a = BinaryTrustMatrix::from_rows(
      {{0, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 0}, {0, 1, 1, 1, 1, 0}});
  const auto run = longest_run(a, Segment{1, 5}, 4);
  ASSERT_TRUE(run);
  EXPECT_EQ(*run, (trustsel::Run{2, 1, 4}));
}

TEST(LongestRun, PicksLongest) {
  const auto a = BinaryTrustMatrix::from_rows({{1, 1, 0, 0}, {0, 1, 1, 1}});
  const auto run = longest_run(a, Segment{0, 4}, 2);
  ASSERT_TRUE(run);
  EXPECT_EQ(*run, (trustsel::Run{1, 1, 3}));
}

TEST(LongestRun, NoneInZeros) {
  const auto a = BinaryTrustMatrix::from_rows({{0, 0, 0}, {0, 0, 0}});
  EXPECT_FALSE(longest_run(a, Segment{0, 3}, 1));
}

TEST(LongestRun, ClippedBySegment) {
  const auto a = BinaryTrustMatrix::from_rows({{1, 1, 1, 1, 1, 1}});
  EXPECT_EQ(*longest_run(a, Segment{2, 5}, 1), (trustsel::Run{0, 2, 3}));
  EXPECT_FALSE(longest_run(a, Segment{2, 5}, 4));
}

TEST(LongestRun, TiesLowestRowThenEarliest) {
  const auto a = BinaryTrustMatrix::from_rows({{0, 0, 0, 1, 1}, {1, 1, 0, 1, 1}});
  EXPECT_EQ(*longest_run(a, Segment{0, 5}, 2), (trustsel::Run{0, 3, 2}));
  const auto b = BinaryTrustMatrix::from_rows({{1, 1, 0, 1, 1}});
  EXPECT_EQ(*longest_run(b, Segment{0, 5}, 2), (trustsel::Run{0, 0, 2}));
}

TEST(Splice, Walkthrough) {
  const auto a = ref::splice_walkthrough_matrix();
  const auto r = splice_run(a, config(2, 4));
  EXPECT_EQ(r.plan.assignment, ref::splice_walkthrough_expected());
  EXPECT_EQ(r.plan.switch_count, 2u);
  EXPECT_EQ(r.plan.trust_score, 14);
  ASSERT_EQ(r.anchors.size(), 3u);
  EXPECT_EQ(r.anchors[0], (trustsel::Run{1, 6, 4}));
  EXPECT_FALSE(r.fallback);
}

TEST(Splice, AllOneRow) {
  const auto a = BinaryTrustMatrix::from_rows({{0, 1, 0, 1, 0, 1, 0, 1}, std::vector<int>(8, 1)});
  const auto plan = splice_select(a, config(1, 2));
  EXPECT_EQ(plan.assignment, std::vector<ModelIndex>(8, 1));
  EXPECT_EQ(plan.switch_count, 0u);
  EXPECT_EQ(plan.trust_score, 8);
}

TEST(Splice, AllZeros) {
  const auto a = BinaryTrustMatrix::from_rows({std::vector<int>(6, 0), std::vector<int>(6, 0)});
  const auto r = splice_run(a, config(1, 3));
  EXPECT_TRUE(r.fallback);
  EXPECT_EQ(r.plan.trust_score, 0);
  EXPECT_EQ(r.plan.failsafe_slots.size(), 6u);
  EXPECT_TRUE(validate_plan(r.plan, config(1, 3)).feasible());
}

TEST(Splice, GapTieGoesLeft) {
  // Anchors row 0 on [0,3) and row 1 on [6,9); the gap [3,6) holds one
  // trusted slot for each neighbour.
  const auto b = BinaryTrustMatrix::from_rows(
      {{1, 1, 1, 0, 1, 0, 0, 0, 0}, {0, 0, 0, 1, 0, 0, 1, 1, 1}});
  const auto plan = splice_select(b, config(1, 3));
  EXPECT_EQ(plan.assignment, (std::vector<ModelIndex>{0, 0, 0, 0, 0, 0, 1, 1, 1}));
}

TEST(Splice, RejectsInfeasibleConfig) {
  const auto a = BinaryTrustMatrix::from_rows({std::vector<int>(6, 1)});
  EXPECT_THROW(splice_select(a, config(2, 3)), ConfigError);
}

// Feasible, bounded by the optimum, and anchors partition without overlap.
TEST(Splice, RandomInstancesProperty) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t M = ref::uniform_int<std::size_t>(rng, 1, 4);
    const std::size_t T = ref::uniform_int<std::size_t>(rng, 4, 12);
    const std::size_t R = ref::uniform_int<std::size_t>(rng, 1, 3);
    const std::size_t B = ref::uniform_int<std::size_t>(rng, 0, T / R - 1);
    const auto a = ref::random_binary(rng, M, T, 0.6);
    const auto c = config(B, R);
    const auto r = splice_run(a, c);
    ASSERT_EQ(r.plan.assignment.size(), T);
    EXPECT_TRUE(validate_plan(r.plan, c).feasible()) << "trial " << trial;
    EXPECT_LE(r.plan.trust_score, ref::brute_force_best(a, B, R)) << "trial " << trial;
    for (std::size_t i = 0; i < r.anchors.size(); ++i) {
      for (std::size_t j = i + 1; j < r.anchors.size(); ++j) {
        const bool disjoint = r.anchors[i].end() <= r.anchors[j].start ||
                              r.anchors[j].end() <= r.anchors[i].start;
        EXPECT_TRUE(disjoint);
      }
    }
    SlotIndex cursor = 0;
    for (const auto& s : r.segments) {
      EXPECT_EQ(s.start, cursor);
      EXPECT_TRUE(s.selected);
      cursor = s.end;
    }
    EXPECT_EQ(cursor, T);
  }
}
