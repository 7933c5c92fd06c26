#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "trustsel/attack.hpp"
#include "trustsel/types.hpp"

namespace trustsel {

enum class Solver { Splice, Fixing, Oracle, LpBound };

const char* solver_name(Solver s) noexcept;
/// Accepts "splice", "fixing", "oracle", "lp-bound". Throws ConfigError.
Solver parse_solver(const std::string& name);
std::vector<Solver> all_solvers();

enum ExitCode : int { kExitOk = 0, kExitError = 1, kExitFailsafe = 2 };

struct PipelineOptions {
  BudgetConfig config;
  std::vector<Solver> solvers = all_solvers();
  // Adds the sliding rate-window rows to the reported LP bound.
  bool rate_windows = false;
  // When set, RMSE of every model and every plan against it is reported.
  std::optional<std::vector<double>> ground_truth;
};

struct SolverOutcome {
  Solver solver;
  std::optional<SelectionPlan> plan;  // empty for the LP bound
  double score = 0.0;                 // integral for plan solvers
  double millis = 0.0;
  std::optional<double> rmse;
};

struct RunReport {
  std::string source;
  std::vector<std::string> model_ids;
  std::size_t slots = 0;
  BudgetConfig config;
  bool rate_windows = false;
  std::vector<SolverOutcome> outcomes;
  std::vector<SlotIndex> failsafe_slots;
  std::optional<double> gap_oracle_pct;  // (oracle - fixing) / oracle * 100
  std::optional<double> gap_lp_pct;      // (lp - fixing) / lp * 100
  std::vector<double> model_rmse;        // empty without ground truth
  std::vector<std::string> notes;

  const SolverOutcome* find(Solver s) const;
  int exit_code() const noexcept { return failsafe_slots.empty() ? kExitOk : kExitFailsafe; }
};

/// Binarize -> solve -> validate -> report, starting from a binary matrix.
/// `outputs` (optional) supplies the values used for RMSE.
RunReport run_pipeline(const BinaryTrustMatrix& a, const std::vector<std::string>& model_ids,
                       const PipelineOptions& options, const ModelOutputs* outputs = nullptr);

/// Full pipeline from raw outputs: exclusion at config.lambda, then as above.
RunReport run_pipeline(const ModelOutputs& outputs, const PipelineOptions& options);

/// Root-mean-square error of the outputs the plan deploys.
double plan_rmse(const SelectionPlan& plan, const ModelOutputs& outputs,
                 const std::vector<double>& truth);
double model_rmse(const ModelOutputs& outputs, ModelIndex m, const std::vector<double>& truth);

nlohmann::json report_to_json(const RunReport& report);

/// Recomputes every plan score in a report from the plan files and the binary
/// matrix; returns the mismatches (empty when consistent).
std::vector<std::string> check_report(const nlohmann::json& report,
                                      const std::map<std::string, SelectionPlan>& plans,
                                      const BinaryTrustMatrix& a);

struct BenchOptions {
  std::size_t instances = 200;
  std::size_t budget_min = 1;
  std::size_t budget_max = 10;
  BudgetConfig config;       // budget is overwritten per instance
  InstanceSpec instance;     // seed is offset per instance
};

struct BenchInstance {
  std::uint64_t seed = 0;
  std::size_t budget = 0;
  std::int64_t splice = 0;
  std::int64_t fixing = 0;
  std::int64_t oracle = 0;
  double lp_bound = 0.0;
  double gap_oracle_pct = 0.0;
  double gap_lp_pct = 0.0;
  std::optional<double> ratio;
  double ratio_bound = 0.0;
  double fixing_rmse = 0.0;
  double malicious_rmse = 0.0;  // mean over malicious rows, 0 when none
  bool failsafe = false;
};

struct GapSummary {
  double min = 0.0;
  double median = 0.0;
  double mean = 0.0;
  double max = 0.0;
};

struct BenchReport {
  BenchOptions options;
  std::vector<BenchInstance> instances;
  GapSummary gap_oracle;
  GapSummary gap_lp;
  std::map<std::size_t, GapSummary> gap_oracle_by_budget;
  std::optional<double> min_ratio;
  std::vector<std::string> warnings;  // ratio-bound violations with reproducer seeds
  bool ordering_ok = true;
};

GapSummary summarize(std::vector<double> values);

/// Seeded synthetic suite: instance i uses seed base+i and budget cycling
/// through [budget_min, budget_max].
BenchReport run_bench(const BenchOptions& options);

nlohmann::json bench_to_json(const BenchReport& report);

}  // namespace trustsel
