#include "trustsel/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "trustsel/error.hpp"
#include "trustsel/fixing.hpp"
#include "trustsel/io.hpp"
#include "trustsel/oracle.hpp"
#include "trustsel/relaxation.hpp"
#include "trustsel/splice.hpp"
#include "trustsel/trust.hpp"

namespace trustsel {
namespace {

using Clock = std::chrono::steady_clock;

double millis_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::optional<double> gap_pct(double reference, double value) {
  if (reference <= 0.0) return std::nullopt;
  return (reference - value) / reference * 100.0;
}

}  // namespace

const char* solver_name(Solver s) noexcept {
  switch (s) {
    case Solver::Splice: return "splice";
    case Solver::Fixing: return "fixing";
    case Solver::Oracle: return "oracle";
    case Solver::LpBound: return "lp-bound";
  }
  return "unknown";
}

Solver parse_solver(const std::string& name) {
  for (auto s : all_solvers()) {
    if (name == solver_name(s)) return s;
  }
  throw ConfigError(fmt::format("unknown solver '{}'", name));
}

std::vector<Solver> all_solvers() {
  return {Solver::Splice, Solver::Fixing, Solver::Oracle, Solver::LpBound};
}

const SolverOutcome* RunReport::find(Solver s) const {
  for (const auto& o : outcomes) {
    if (o.solver == s) return &o;
  }
  return nullptr;
}

double plan_rmse(const SelectionPlan& plan, const ModelOutputs& outputs,
                 const std::vector<double>& truth) {
  if (truth.size() != plan.slot_count() || outputs.slot_count() != plan.slot_count()) {
    throw InputError("ground truth, outputs and plan differ in length");
  }
  double sum = 0.0;
  for (SlotIndex t = 0; t < truth.size(); ++t) {
    const double e = outputs.values()(plan.assignment[t], t) - truth[t];
    sum += e * e;
  }
  return std::sqrt(sum / static_cast<double>(truth.size()));
}

double model_rmse(const ModelOutputs& outputs, ModelIndex m, const std::vector<double>& truth) {
  if (truth.size() != outputs.slot_count()) throw InputError("ground truth length mismatch");
  double sum = 0.0;
  for (SlotIndex t = 0; t < truth.size(); ++t) {
    const double e = outputs.values()(m, t) - truth[t];
    sum += e * e;
  }
  return std::sqrt(sum / static_cast<double>(truth.size()));
}

RunReport run_pipeline(const BinaryTrustMatrix& a, const std::vector<std::string>& model_ids,
                       const PipelineOptions& options, const ModelOutputs* outputs) {
  const auto& config = options.config;
  config.validate_for(a.slot_count());
  if (model_ids.size() != a.model_count()) throw InputError("model ids do not match the matrix");

  RunReport report;
  report.model_ids = model_ids;
  report.slots = a.slot_count();
  report.config = config;
  report.rate_windows = options.rate_windows;
  report.failsafe_slots = a.failsafe_slots();

  auto wants = [&](Solver s) {
    return std::find(options.solvers.begin(), options.solvers.end(), s) != options.solvers.end();
  };

  std::optional<FractionalSolution> budget_lp;
  double budget_lp_ms = 0.0;
  auto budget_relaxation = [&]() -> const FractionalSolution& {
    if (!budget_lp) {
      const auto start = Clock::now();
      budget_lp = solve_relaxation(a, config, false);
      budget_lp_ms = millis_since(start);
    }
    return *budget_lp;
  };

  auto add_plan = [&](Solver s, SelectionPlan plan, double ms) {
    const auto check = validate_plan(plan, config);
    for (const auto& v : check.violations) {
      report.notes.push_back(fmt::format("{} plan infeasible: {}", solver_name(s), v.message));
    }
    SolverOutcome o{s, std::nullopt, static_cast<double>(plan.trust_score), ms, std::nullopt};
    o.plan = std::move(plan);
    report.outcomes.push_back(std::move(o));
  };

  if (wants(Solver::Splice)) {
    const auto start = Clock::now();
    auto plan = splice_select(a, config);
    add_plan(Solver::Splice, std::move(plan), millis_since(start));
  }
  if (wants(Solver::Fixing)) {
    const auto& frac = budget_relaxation();
    const auto start = Clock::now();
    auto result = fixing_run(a, config, frac);
    add_plan(Solver::Fixing, std::move(result.plan), budget_lp_ms + millis_since(start));
  }
  if (wants(Solver::Oracle)) {
    try {
      const auto start = Clock::now();
      auto plan = exact_select(a, config);
      add_plan(Solver::Oracle, std::move(plan), millis_since(start));
    } catch (const SizeError& e) {
      report.notes.push_back(fmt::format("oracle skipped: {}", e.what()));
    }
  }
  if (wants(Solver::LpBound)) {
    SolverOutcome o{Solver::LpBound, std::nullopt, 0.0, 0.0, std::nullopt};
    if (options.rate_windows) {
      const auto start = Clock::now();
      o.score = solve_relaxation(a, config, true).objective;
      o.millis = millis_since(start);
    } else {
      o.score = budget_relaxation().objective;
      o.millis = budget_lp_ms;
    }
    report.outcomes.push_back(o);
  }

  if (const auto* fixing = report.find(Solver::Fixing)) {
    if (const auto* oracle = report.find(Solver::Oracle)) {
      report.gap_oracle_pct = gap_pct(oracle->score, fixing->score);
      if (!report.gap_oracle_pct && oracle->score == 0.0) report.gap_oracle_pct = 0.0;
    }
    if (const auto* lp = report.find(Solver::LpBound)) {
      report.gap_lp_pct = gap_pct(lp->score, fixing->score);
      if (!report.gap_lp_pct && lp->score <= 0.0) report.gap_lp_pct = 0.0;
    }
  }

  if (options.ground_truth) {
    if (!outputs) {
      report.notes.push_back("ground truth ignored: no model outputs available");
    } else {
      const auto& truth = *options.ground_truth;
      for (ModelIndex m = 0; m < outputs->model_count(); ++m) {
        report.model_rmse.push_back(model_rmse(*outputs, m, truth));
      }
      for (auto& o : report.outcomes) {
        if (o.plan) o.rmse = plan_rmse(*o.plan, *outputs, truth);
      }
    }
  }
  return report;
}

RunReport run_pipeline(const ModelOutputs& outputs, const PipelineOptions& options) {
  options.config.validate_for(outputs.slot_count());
  const auto binary = exclude_outliers(outputs, options.config.lambda);
  return run_pipeline(binary, outputs.model_ids(), options, &outputs);
}

nlohmann::json report_to_json(const RunReport& r) {
  nlohmann::json solvers = nlohmann::json::object();
  for (const auto& o : r.outcomes) {
    nlohmann::json s = {{"score", o.score}, {"millis", o.millis}};
    if (o.plan) {
      s["switch_count"] = o.plan->switch_count;
      s["plan_file"] = fmt::format("plan_{}.json", solver_name(o.solver));
    }
    if (o.rmse) s["rmse"] = *o.rmse;
    solvers[solver_name(o.solver)] = s;
  }
  nlohmann::json j = {
      {"schema_version", io::kSchemaVersion},
      {"kind", "run_report"},
      {"instance", {{"source", r.source}, {"models", r.model_ids.size()}, {"slots", r.slots},
                    {"model_ids", r.model_ids}}},
      {"config", io::config_to_json(r.config)},
      {"rate_windows", r.rate_windows},
      {"solvers", solvers},
      {"failsafe_slots", r.failsafe_slots},
      {"failsafe", !r.failsafe_slots.empty()},
      {"notes", r.notes},
  };
  j["gaps"] = nlohmann::json::object();
  if (r.gap_oracle_pct) j["gaps"]["fixing_vs_oracle_pct"] = *r.gap_oracle_pct;
  if (r.gap_lp_pct) j["gaps"]["fixing_vs_lp_pct"] = *r.gap_lp_pct;
  if (!r.model_rmse.empty()) j["model_rmse"] = r.model_rmse;
  return j;
}

std::vector<std::string> check_report(const nlohmann::json& report,
                                      const std::map<std::string, SelectionPlan>& plans,
                                      const BinaryTrustMatrix& a) {
  std::vector<std::string> problems;
  const auto& solvers = report.at("solvers");
  for (const auto& [name, entry] : solvers.items()) {
    if (!entry.contains("plan_file")) continue;
    const auto it = plans.find(name);
    if (it == plans.end()) {
      problems.push_back(fmt::format("{}: plan file missing", name));
      continue;
    }
    const auto& plan = it->second;
    if (plan.slot_count() != a.slot_count()) {
      problems.push_back(fmt::format("{}: plan length {} vs {} slots", name, plan.slot_count(),
                                     a.slot_count()));
      continue;
    }
    const auto score = plan_trust_score(plan, a);
    const auto reported = entry.at("score").get<double>();
    if (static_cast<double>(score) != reported || plan.trust_score != score) {
      problems.push_back(fmt::format("{}: recomputed score {} vs reported {}", name, score,
                                     reported));
    }
    const auto switches = count_switches(plan.assignment);
    if (switches != entry.at("switch_count").get<std::size_t>() ||
        switches != plan.switch_count) {
      problems.push_back(fmt::format("{}: recomputed {} switches", name, switches));
    }
  }
  const auto failsafe = report.at("failsafe_slots").get<std::vector<SlotIndex>>();
  if (failsafe != a.failsafe_slots()) problems.push_back("fail-safe slots do not match matrix");
  return problems;
}

GapSummary summarize(std::vector<double> values) {
  GapSummary s;
  if (values.empty()) return s;
  std::sort(values.begin(), values.end());
  s.min = values.front();
  s.max = values.back();
  const std::size_t n = values.size();
  s.median = n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(n);
  return s;
}

BenchReport run_bench(const BenchOptions& options) {
  if (options.budget_min > options.budget_max) throw ConfigError("empty budget range");
  BenchReport report;
  report.options = options;

  std::vector<double> gaps_oracle;
  std::vector<double> gaps_lp;
  std::map<std::size_t, std::vector<double>> by_budget;
  const std::size_t span = options.budget_max - options.budget_min + 1;

  for (std::size_t i = 0; i < options.instances; ++i) {
    InstanceSpec spec = options.instance;
    spec.seed = options.instance.seed + i;
    BudgetConfig config = options.config;
    config.budget = options.budget_min + i % span;

    const auto inst = generate_instance(spec);
    const auto a = exclude_outliers(inst.outputs, config.lambda);
    const auto frac = solve_relaxation(a, config);
    const auto fixing = fixing_run(a, config, frac);
    const auto oracle = exact_select(a, config);

    BenchInstance row;
    row.seed = spec.seed;
    row.budget = config.budget;
    row.splice = fixing.splice_score;
    row.fixing = fixing.plan.trust_score;
    row.oracle = oracle.trust_score;
    row.lp_bound = frac.objective;
    row.gap_oracle_pct = gap_pct(static_cast<double>(row.oracle), static_cast<double>(row.fixing))
                             .value_or(0.0);
    row.gap_lp_pct = gap_pct(row.lp_bound, static_cast<double>(row.fixing)).value_or(0.0);
    row.ratio_bound = splice_ratio_bound(a.slot_count(), config.rate, config.budget);
    if (row.oracle > 0) row.ratio = static_cast<double>(row.splice) / static_cast<double>(row.oracle);
    row.fixing_rmse = plan_rmse(fixing.plan, inst.outputs, inst.ground_truth);
    for (auto m : inst.malicious) row.malicious_rmse += model_rmse(inst.outputs, m, inst.ground_truth);
    if (!inst.malicious.empty()) row.malicious_rmse /= static_cast<double>(inst.malicious.size());
    row.failsafe = !a.failsafe_slots().empty();

    const bool ordered = row.splice <= row.fixing && row.fixing <= row.oracle &&
                         static_cast<double>(row.oracle) <= row.lp_bound + 1e-6;
    if (!ordered) {
      report.ordering_ok = false;
      report.warnings.push_back(fmt::format("seed {} budget {}: score ordering violated", row.seed,
                                            row.budget));
    }
    if (row.ratio) {
      if (!report.min_ratio || *row.ratio < *report.min_ratio) report.min_ratio = row.ratio;
      if (*row.ratio < row.ratio_bound) {
        report.warnings.push_back(
            fmt::format("seed {} budget {}: splice/oracle {:.4f} below bound {:.4f}", row.seed,
                        row.budget, *row.ratio, row.ratio_bound));
      }
    }

    gaps_oracle.push_back(row.gap_oracle_pct);
    gaps_lp.push_back(row.gap_lp_pct);
    by_budget[row.budget].push_back(row.gap_oracle_pct);
    report.instances.push_back(row);
  }

  report.gap_oracle = summarize(gaps_oracle);
  report.gap_lp = summarize(gaps_lp);
  for (auto& [b, v] : by_budget) report.gap_oracle_by_budget[b] = summarize(std::move(v));
  return report;
}

nlohmann::json bench_to_json(const BenchReport& r) {
  auto gap = [](const GapSummary& g) {
    return nlohmann::json{{"min", g.min}, {"median", g.median}, {"mean", g.mean}, {"max", g.max}};
  };
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& i : r.instances) {
    nlohmann::json row = {{"seed", i.seed},         {"budget", i.budget},
                          {"splice", i.splice},     {"fixing", i.fixing},
                          {"oracle", i.oracle},     {"lp_bound", i.lp_bound},
                          {"gap_oracle_pct", i.gap_oracle_pct},
                          {"gap_lp_pct", i.gap_lp_pct},
                          {"ratio_bound", i.ratio_bound},
                          {"fixing_rmse", i.fixing_rmse},
                          {"malicious_rmse", i.malicious_rmse},
                          {"failsafe", i.failsafe}};
    if (i.ratio) row["ratio"] = *i.ratio;
    rows.push_back(row);
  }
  nlohmann::json per_budget = nlohmann::json::object();
  for (const auto& [b, g] : r.gap_oracle_by_budget) per_budget[std::to_string(b)] = gap(g);

  const auto& spec = r.options.instance;
  nlohmann::json j = {
      {"schema_version", io::kSchemaVersion},
      {"kind", "bench_report"},
      {"suite", {{"instances", r.options.instances},
                 {"models", spec.models},
                 {"slots", spec.slots},
                 {"malicious", spec.malicious},
                 {"attack_percentile", spec.attack_percentile},
                 {"poison_fraction", spec.poison_fraction},
                 {"benign_noise", spec.benign_noise},
                 {"seed", spec.seed},
                 {"budget_min", r.options.budget_min},
                 {"budget_max", r.options.budget_max}}},
      {"config", io::config_to_json(r.options.config)},
      {"gap_fixing_vs_oracle_pct", gap(r.gap_oracle)},
      {"gap_fixing_vs_lp_pct", gap(r.gap_lp)},
      {"gap_fixing_vs_oracle_by_budget", per_budget},
      {"ordering_ok", r.ordering_ok},
      {"warnings", r.warnings},
      {"instances", rows},
  };
  if (r.min_ratio) j["min_splice_oracle_ratio"] = *r.min_ratio;
  return j;
}

}  // namespace trustsel
