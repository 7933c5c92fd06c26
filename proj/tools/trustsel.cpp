// Command-line front end: trust, binarize, select, attack, gen, bench, report.
//
// Exit codes: 0 success, 1 error, 2 fail-safe (some slot has no trusted model).

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "trustsel/attack.hpp"
#include "trustsel/error.hpp"
#include "trustsel/io.hpp"
#include "trustsel/pipeline.hpp"
#include "trustsel/relaxation.hpp"
#include "trustsel/trust.hpp"

namespace fs = std::filesystem;
using namespace trustsel;

namespace {

// Budget knobs as optional flags so that explicitly given flags override the
// config file and everything else falls back to it.
struct ConfigFlags {
  std::string file;
  std::optional<std::size_t> budget;
  std::optional<std::size_t> rate;
  std::optional<double> p_max;
  std::optional<double> lambda;
  std::optional<double> h0;
  std::optional<double> eps;

  void attach(CLI::App* app) {
    app->add_option("--config", file, "JSON file with budget/rate/p_max/lambda/h0/eps");
    app->add_option("--budget,-B", budget, "Max reconfigurations B (default 7)");
    app->add_option("--rate,-R", rate, "Minimum dwell R in slots (default 4)");
    app->add_option("--p-max", p_max, "Trust cap (default 10)");
    app->add_option("--lambda", lambda, "Exclusion multiplier (default 0.85)");
    app->add_option("--h0", h0, "Initial rounding threshold (default 0.9)");
    app->add_option("--eps", eps, "Threshold decrement (default 0.05)");
  }

  BudgetConfig resolve() const {
    BudgetConfig c;
    if (!file.empty()) c = io::config_from_json(io::read_json(file), c);
    if (budget) c.budget = *budget;
    if (rate) c.rate = *rate;
    if (p_max) c.p_max = *p_max;
    if (lambda) c.lambda = *lambda;
    if (h0) c.h0 = *h0;
    if (eps) c.eps = *eps;
    c.validate();
    return c;
  }
};

SignalKind parse_signal(const std::string& s) {
  if (s == "sinusoid") return SignalKind::Sinusoid;
  if (s == "trend") return SignalKind::Trend;
  if (s == "piecewise") return SignalKind::Piecewise;
  throw ConfigError(fmt::format("unknown signal '{}'", s));
}

SwapMode parse_mode(const std::string& s) {
  if (s == "exact") return SwapMode::Exact;
  if (s == "reflect") return SwapMode::Reflect;
  if (s == "auto") return SwapMode::Auto;
  throw ConfigError(fmt::format("unknown swap mode '{}'", s));
}

void print_report(const RunReport& r) {
  fmt::print("{:<10} {:>10} {:>9} {:>10} {:>9}\n", "solver", "score", "switches", "ms", "rmse");
  for (const auto& o : r.outcomes) {
    const std::string switches = o.plan ? std::to_string(o.plan->switch_count) : "-";
    const std::string rmse = o.rmse ? fmt::format("{:.4f}", *o.rmse) : "-";
    fmt::print("{:<10} {:>10.4f} {:>9} {:>10.3f} {:>9}\n", solver_name(o.solver), o.score,
               switches, o.millis, rmse);
  }
  if (r.gap_oracle_pct) fmt::print("gap fixing vs oracle: {:.3f}%\n", *r.gap_oracle_pct);
  if (r.gap_lp_pct) fmt::print("gap fixing vs LP bound: {:.3f}%\n", *r.gap_lp_pct);
  for (const auto& n : r.notes) fmt::print("note: {}\n", n);
  if (!r.failsafe_slots.empty()) {
    fmt::print(stderr, "FAIL-SAFE: no trusted model at slot(s) {}\n",
               fmt::join(r.failsafe_slots, ","));
  }
}

int cmd_select(const std::string& input, const std::string& binary_path,
               const std::vector<std::string>& solver_names, bool rate_windows,
               const std::string& truth_path, const std::string& out_dir,
               const std::string& lp_dump, const ConfigFlags& flags) {
  PipelineOptions options;
  options.config = flags.resolve();
  options.rate_windows = rate_windows;
  if (!solver_names.empty() &&
      !(solver_names.size() == 1 && solver_names.front() == "all")) {
    options.solvers.clear();
    for (const auto& n : solver_names) options.solvers.push_back(parse_solver(n));
  }
  if (!truth_path.empty()) options.ground_truth = io::load_series(truth_path);

  std::optional<ModelOutputs> outputs;
  std::optional<io::LabeledBinary> binary;
  if (!input.empty()) {
    outputs = io::load_outputs(input);
    binary = io::LabeledBinary{outputs->model_ids(), exclude_outliers(*outputs, options.config.lambda)};
  } else {
    binary = io::load_binary(binary_path);
  }

  RunReport report = outputs ? run_pipeline(*outputs, options)
                             : run_pipeline(binary->matrix, binary->ids, options);
  report.source = input.empty() ? binary_path : input;

  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    io::save_binary(fs::path(out_dir) / "binary.csv", binary->ids, binary->matrix);
    if (outputs) {
      io::save_trust(fs::path(out_dir) / "trust.csv", outputs->model_ids(),
                     compute_trust_matrix(*outputs, options.config.p_max));
    }
    for (const auto& o : report.outcomes) {
      if (!o.plan) continue;
      io::write_json(fs::path(out_dir) / fmt::format("plan_{}.json", solver_name(o.solver)),
                     io::plan_to_json(*o.plan, solver_name(o.solver), binary->ids));
    }
    io::write_json(fs::path(out_dir) / "report.json", report_to_json(report));
  }
  if (!lp_dump.empty()) {
    std::ofstream out(lp_dump);
    if (!out) throw InputError(fmt::format("cannot write '{}'", lp_dump));
    write_lp_format(out, build_lp(binary->matrix, options.config, rate_windows).program);
  }
  print_report(report);
  return report.exit_code();
}

int cmd_report(const std::string& report_path, std::string binary_path) {
  const auto report = io::read_json(report_path);
  const fs::path dir = fs::path(report_path).parent_path();
  if (binary_path.empty()) binary_path = (dir / "binary.csv").string();
  const auto binary = io::load_binary(binary_path);

  std::map<std::string, SelectionPlan> plans;
  for (const auto& [name, entry] : report.at("solvers").items()) {
    if (!entry.contains("plan_file")) continue;
    const auto path = dir / entry.at("plan_file").get<std::string>();
    if (fs::exists(path)) plans[name] = io::plan_from_json(io::read_json(path));
  }

  fmt::print("{:<10} {:>10} {:>9}\n", "solver", "score", "switches");
  for (const auto& [name, entry] : report.at("solvers").items()) {
    const std::string switches =
        entry.contains("switch_count") ? std::to_string(entry.at("switch_count").get<int>()) : "-";
    fmt::print("{:<10} {:>10.4f} {:>9}\n", name, entry.at("score").get<double>(), switches);
  }
  const auto problems = check_report(report, plans, binary.matrix);
  for (const auto& p : problems) fmt::print(stderr, "inconsistent: {}\n", p);
  if (!problems.empty()) return kExitError;
  fmt::print("report consistent with {} plan file(s)\n", plans.size());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Trust-based model selection under a reconfiguration budget"};
  app.require_subcommand(1);

  // trust
  std::string in_path, out_path;
  ConfigFlags trust_flags;
  auto* trust = app.add_subcommand("trust", "Agreement-based trust matrix from model outputs");
  trust->add_option("--input,-i", in_path, "Model outputs CSV")->required();
  trust->add_option("--output,-o", out_path, "Trust matrix CSV")->required();
  trust_flags.attach(trust);

  // binarize
  ConfigFlags bin_flags;
  auto* binarize = app.add_subcommand("binarize", "Lambda-sigma exclusion to a 0/1 trust matrix");
  binarize->add_option("--input,-i", in_path, "Model outputs CSV")->required();
  binarize->add_option("--output,-o", out_path, "Binary matrix CSV")->required();
  bin_flags.attach(binarize);

  // select
  ConfigFlags sel_flags;
  std::string binary_path, truth_path, out_dir, lp_dump;
  std::vector<std::string> solvers;
  bool rate_windows = false;
  auto* select = app.add_subcommand("select", "Run solvers and write plans plus a report");
  auto* sel_in = select->add_option("--input,-i", in_path, "Model outputs CSV");
  auto* sel_bin = select->add_option("--binary", binary_path, "Binary trust matrix CSV");
  sel_in->excludes(sel_bin);
  select->add_option("--solver,-s", solvers, "splice | fixing | oracle | lp-bound | all (repeatable)");
  select->add_flag("--rate-windows", rate_windows, "Add sliding rate-window rows to the LP bound");
  select->add_option("--truth", truth_path, "Ground-truth series CSV for RMSE");
  select->add_option("--out-dir", out_dir, "Directory for binary.csv, plans and report.json");
  select->add_option("--lp-dump", lp_dump, "Write the relaxation in CPLEX LP format");
  sel_flags.attach(select);

  // attack
  std::vector<std::string> attack_models;
  double percent = 20.0;
  std::size_t region_begin = 0, region_end = 0;
  std::string mode = "auto";
  auto* attack = app.add_subcommand("attack", "Swap x/(100-x) percentile attack on chosen models");
  attack->add_option("--input,-i", in_path, "Model outputs CSV")->required();
  attack->add_option("--output,-o", out_path, "Poisoned outputs CSV")->required();
  attack->add_option("--model,-m", attack_models, "Model id to poison (repeatable)")->required();
  attack->add_option("--percentile,-x", percent, "x in (0, 50)");
  attack->add_option("--begin", region_begin, "First poisoned slot (0-based)");
  attack->add_option("--end", region_end, "One past the last poisoned slot (default T)");
  attack->add_option("--mode", mode, "exact | reflect | auto");

  // gen
  InstanceSpec spec;
  std::string signal = "sinusoid", truth_out, meta_out;
  auto* gen = app.add_subcommand("gen", "Synthetic ensemble with poisoned models");
  gen->add_option("--models,-M", spec.models);
  gen->add_option("--slots,-T", spec.slots);
  gen->add_option("--malicious,-C", spec.malicious);
  gen->add_option("--signal", signal, "sinusoid | trend | piecewise");
  gen->add_option("--level", spec.signal.level);
  gen->add_option("--amplitude", spec.signal.amplitude);
  gen->add_option("--period", spec.signal.period);
  gen->add_option("--slope", spec.signal.slope);
  gen->add_option("--noise", spec.benign_noise, "Benign noise standard deviation");
  gen->add_option("--percentile,-x", spec.attack_percentile);
  gen->add_option("--poison-fraction", spec.poison_fraction);
  gen->add_option("--seed", spec.seed);
  gen->add_option("--output,-o", out_path, "Model outputs CSV")->required();
  gen->add_option("--truth", truth_out, "Ground-truth series CSV");
  gen->add_option("--meta", meta_out, "JSON with malicious ids and poisoned regions");

  // bench
  BenchOptions bench_opts;
  ConfigFlags bench_flags;
  std::string bench_out;
  auto* bench = app.add_subcommand("bench", "Seeded synthetic suite: gap and ratio statistics");
  bench->add_option("--instances,-n", bench_opts.instances);
  bench->add_option("--models,-M", bench_opts.instance.models);
  bench->add_option("--slots,-T", bench_opts.instance.slots);
  bench->add_option("--malicious,-C", bench_opts.instance.malicious);
  bench->add_option("--percentile,-x", bench_opts.instance.attack_percentile);
  bench->add_option("--noise", bench_opts.instance.benign_noise);
  bench->add_option("--seed", bench_opts.instance.seed);
  bench->add_option("--budget-min", bench_opts.budget_min);
  bench->add_option("--budget-max", bench_opts.budget_max);
  bench->add_option("--output,-o", bench_out, "Bench report JSON");
  bench_flags.attach(bench);

  // report
  std::string report_path;
  auto* report = app.add_subcommand("report", "Print a run report and re-check it against its plans");
  report->add_option("--report", report_path, "report.json written by select")->required();
  report->add_option("--binary", binary_path, "Binary matrix (default: binary.csv beside report)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (*trust) {
      const auto config = trust_flags.resolve();
      const auto outputs = io::load_outputs(in_path);
      io::save_trust(out_path, outputs.model_ids(), compute_trust_matrix(outputs, config.p_max));
      return kExitOk;
    }
    if (*binarize) {
      const auto config = bin_flags.resolve();
      const auto outputs = io::load_outputs(in_path);
      const auto binary = exclude_outliers(outputs, config.lambda);
      io::save_binary(out_path, outputs.model_ids(), binary);
      const auto failsafe = binary.failsafe_slots();
      if (!failsafe.empty()) {
        fmt::print(stderr, "FAIL-SAFE: no trusted model at slot(s) {}\n", fmt::join(failsafe, ","));
        return kExitFailsafe;
      }
      return kExitOk;
    }
    if (*select) {
      if (in_path.empty() && binary_path.empty()) throw ConfigError("select needs --input or --binary");
      return cmd_select(in_path, binary_path, solvers, rate_windows, truth_path, out_dir, lp_dump,
                        sel_flags);
    }
    if (*attack) {
      const auto outputs = io::load_outputs(in_path);
      const SlotRange region{region_begin, region_end == 0 ? outputs.slot_count() : region_end};
      Grid<double> values = outputs.values();
      for (const auto& id : attack_models) {
        const auto& ids = outputs.model_ids();
        const auto it = std::find(ids.begin(), ids.end(), id);
        if (it == ids.end()) throw InputError(fmt::format("unknown model '{}'", id));
        const auto m = static_cast<ModelIndex>(it - ids.begin());
        const auto row = values.row(m);
        const auto poisoned = swap_percentile_attack(row, percent, region, parse_mode(mode));
        if (poisoned.degenerate) {
          fmt::print(stderr, "warning: model '{}' has equal percentile values, left unchanged\n", id);
        }
        std::copy(poisoned.series.begin(), poisoned.series.end(), row.begin());
      }
      io::save_outputs(out_path, ModelOutputs(outputs.model_ids(), std::move(values)));
      return kExitOk;
    }
    if (*gen) {
      spec.signal.kind = parse_signal(signal);
      const auto inst = generate_instance(spec);
      io::save_outputs(out_path, inst.outputs);
      if (!truth_out.empty()) io::save_series(truth_out, "ground_truth", inst.ground_truth);
      if (!meta_out.empty()) {
        nlohmann::json regions = nlohmann::json::array();
        for (const auto& r : inst.poisoned) regions.push_back({r.begin, r.end});
        std::vector<std::string> ids;
        for (auto m : inst.malicious) ids.push_back(inst.outputs.model_ids()[m]);
        io::write_json(meta_out, {{"schema_version", io::kSchemaVersion},
                                  {"kind", "instance_meta"},
                                  {"seed", spec.seed},
                                  {"malicious", ids},
                                  {"poisoned_regions", regions}});
      }
      return kExitOk;
    }
    if (*bench) {
      bench_opts.config = bench_flags.resolve();
      const auto r = run_bench(bench_opts);
      fmt::print("{:>6} {:>10} {:>10} {:>10} {:>10}\n", "B", "gap med%", "gap mean%", "gap max%",
                 "instances");
      for (const auto& [b, g] : r.gap_oracle_by_budget) {
        std::size_t n = 0;
        for (const auto& i : r.instances) n += i.budget == b ? 1 : 0;
        fmt::print("{:>6} {:>10.3f} {:>10.3f} {:>10.3f} {:>10}\n", b, g.median, g.mean, g.max, n);
      }
      fmt::print("fixing vs oracle: median {:.3f}% mean {:.3f}% max {:.3f}%\n", r.gap_oracle.median,
                 r.gap_oracle.mean, r.gap_oracle.max);
      fmt::print("fixing vs LP bound: median {:.3f}% mean {:.3f}% max {:.3f}%\n", r.gap_lp.median,
                 r.gap_lp.mean, r.gap_lp.max);
      if (r.min_ratio) fmt::print("min splice/oracle ratio: {:.4f}\n", *r.min_ratio);
      for (const auto& w : r.warnings) fmt::print(stderr, "warning: {}\n", w);
      if (!bench_out.empty()) io::write_json(bench_out, bench_to_json(r));
      return r.ordering_ok ? kExitOk : kExitError;
    }
    if (*report) return cmd_report(report_path, binary_path);
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kExitError;
  }
  return kExitError;
}
