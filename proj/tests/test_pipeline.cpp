#include <gtest/gtest.h>

#include <cmath>

#include "trustsel/error.hpp"
#include "trustsel/pipeline.hpp"

using namespace trustsel;

namespace {

PipelineOptions options(std::size_t budget, std::size_t rate) {
  PipelineOptions o;
  o.config.budget = budget;
  o.config.rate = rate;
  return o;
}

std::vector<std::string> ids(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back("m" + std::to_string(i));
  return out;
}

}  // namespace

TEST(Pipeline, SolverNames) {
  for (auto s : all_solvers()) EXPECT_EQ(parse_solver(solver_name(s)), s);
  EXPECT_THROW(parse_solver("greedy"), ConfigError);
}

TEST(Pipeline, FailsafeExitCode) {
  const auto a = BinaryTrustMatrix::from_rows({{1, 0, 1, 1, 0, 1}, {1, 0, 1, 0, 0, 1}});
  const auto r = run_pipeline(a, ids(2), options(1, 2));
  EXPECT_EQ(r.failsafe_slots, (std::vector<SlotIndex>{1, 4}));
  EXPECT_EQ(r.exit_code(), kExitFailsafe);
}

TEST(Pipeline, AllOneRowZeroGaps) {
  const auto a = BinaryTrustMatrix::from_rows({{0, 1, 0, 1, 0, 1, 0, 1}, std::vector<int>(8, 1)});
  const auto r = run_pipeline(a, ids(2), options(1, 2));
  EXPECT_EQ(r.exit_code(), kExitOk);
  for (const auto& o : r.outcomes) EXPECT_NEAR(o.score, 8.0, 1e-9) << solver_name(o.solver);
  ASSERT_TRUE(r.gap_oracle_pct);
  ASSERT_TRUE(r.gap_lp_pct);
  EXPECT_NEAR(*r.gap_oracle_pct, 0.0, 1e-9);
  EXPECT_NEAR(*r.gap_lp_pct, 0.0, 1e-9);
}

TEST(Pipeline, SolverSubset) {
  const auto a = BinaryTrustMatrix::from_rows({std::vector<int>(8, 1)});
  auto o = options(1, 2);
  o.solvers = {Solver::Splice};
  const auto r = run_pipeline(a, ids(1), o);
  ASSERT_EQ(r.outcomes.size(), 1u);
  EXPECT_FALSE(r.gap_oracle_pct);
}

TEST(Pipeline, RateWindowBoundStillAboveOracle) {
  InstanceSpec spec;
  spec.slots = 32;
  spec.models = 5;
  auto o = options(3, 4);
  o.rate_windows = true;
  const auto inst = generate_instance(spec);
  const auto r = run_pipeline(inst.outputs, o);
  EXPECT_GE(r.find(Solver::LpBound)->score + 1e-6, r.find(Solver::Oracle)->score);
}

TEST(Pipeline, RmseWithTruth) {
  InstanceSpec spec;
  spec.slots = 24;
  spec.models = 4;
  const auto inst = generate_instance(spec);
  auto o = options(2, 4);
  o.ground_truth = inst.ground_truth;
  const auto r = run_pipeline(inst.outputs, o);
  ASSERT_EQ(r.model_rmse.size(), 4u);
  const auto* fixing = r.find(Solver::Fixing);
  ASSERT_TRUE(fixing && fixing->rmse);
  EXPECT_TRUE(std::isfinite(*fixing->rmse));
}

TEST(Pipeline, ReportConsistencyCheck) {
  const auto a = BinaryTrustMatrix::from_rows({{1, 1, 0, 0, 1, 1}, {0, 0, 1, 1, 1, 0}});
  const auto r = run_pipeline(a, ids(2), options(1, 2));
  const auto j = report_to_json(r);
  std::map<std::string, SelectionPlan> plans;
  for (const auto& o : r.outcomes) {
    if (o.plan) plans[solver_name(o.solver)] = *o.plan;
  }
  EXPECT_TRUE(check_report(j, plans, a).empty());

  auto tampered = j;
  tampered["solvers"]["splice"]["score"] = 99.0;
  EXPECT_FALSE(check_report(tampered, plans, a).empty());

  plans.erase("oracle");
  EXPECT_FALSE(check_report(j, plans, a).empty());
}

TEST(Bench, SmallSuiteOrdered) {
  BenchOptions b;
  b.instances = 6;
  b.instance.models = 4;
  b.instance.slots = 24;
  b.budget_min = 1;
  b.budget_max = 3;
  const auto r = run_bench(b);
  EXPECT_TRUE(r.ordering_ok);
  ASSERT_EQ(r.instances.size(), 6u);
  EXPECT_EQ(r.instances[4].budget, 2u);
  EXPECT_EQ(r.instances[4].seed, b.instance.seed + 4);
  EXPECT_GE(r.gap_oracle.median, 0.0);
  EXPECT_EQ(r.gap_oracle_by_budget.size(), 3u);
  const auto j = bench_to_json(r);
  EXPECT_EQ(j.at("instances").size(), 6u);
}

TEST(Summary, Median) {
  const auto s = summarize({4, 1, 3, 2});
  EXPECT_EQ(s.min, 1);
  EXPECT_EQ(s.max, 4);
  EXPECT_EQ(s.median, 2.5);
  EXPECT_EQ(s.mean, 2.5);
}
