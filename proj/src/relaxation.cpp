#include "trustsel/relaxation.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <ostream>

#include <fmt/format.h>

#include "trustsel/error.hpp"

namespace trustsel {

RelaxedProgram build_lp(const BinaryTrustMatrix& a, const BudgetConfig& config,
                        bool include_rate_windows) {
  config.validate_for(a.slot_count());
  if (include_rate_windows && config.budget == 0) {
    throw ConfigError("rate windows need B > 0: their width is ceil(T/B)");
  }

  RelaxedProgram r;
  r.models = a.model_count();
  r.slots = a.slot_count();
  auto& lp = r.program;

  for (ModelIndex m = 0; m < r.models; ++m) {
    for (SlotIndex t = 0; t < r.slots; ++t) {
      lp.add_variable(fmt::format("a_{}_{}", m, t), a.trusted(m, t) ? 1.0 : 0.0, {0.0, 1.0});
    }
  }
  for (ModelIndex m = 0; m < r.models; ++m) {
    for (SlotIndex t = 1; t < r.slots; ++t) {
      [[maybe_unused]] const auto v = lp.add_variable(fmt::format("s_{}_{}", m, t), 0.0);
      assert(v == r.switch_var(m, t));
    }
  }

  for (SlotIndex t = 0; t < r.slots; ++t) {
    lp::Constraint row{{}, lp::Relation::Equal, 1.0, fmt::format("one_model_{}", t)};
    for (ModelIndex m = 0; m < r.models; ++m) row.terms.push_back({r.assignment_var(m, t), 1.0});
    lp.add_constraint(std::move(row));
    ++r.column_rows;
  }

  {
    lp::Constraint row{{}, lp::Relation::LessEqual, static_cast<double>(config.budget), "budget"};
    for (ModelIndex m = 0; m < r.models; ++m) {
      for (SlotIndex t = 1; t < r.slots; ++t) row.terms.push_back({r.switch_var(m, t), 0.5});
    }
    lp.add_constraint(std::move(row));
    ++r.budget_rows;
  }

  for (ModelIndex m = 0; m < r.models; ++m) {
    for (SlotIndex t = 1; t < r.slots; ++t) {
      const auto cur = r.assignment_var(m, t);
      const auto prev = r.assignment_var(m, t - 1);
      const auto s = r.switch_var(m, t);
      lp.add_constraint({{{cur, 1.0}, {prev, -1.0}, {s, -1.0}},
                         lp::Relation::LessEqual, 0.0, fmt::format("up_{}_{}", m, t)});
      lp.add_constraint({{{prev, 1.0}, {cur, -1.0}, {s, -1.0}},
                         lp::Relation::LessEqual, 0.0, fmt::format("down_{}_{}", m, t)});
      r.link_rows += 2;
    }
  }

  if (include_rate_windows) {
    // 1-based: windows start at k = 1..T-w and cover j = k..k+w; j = 1 has no
    // predecessor and is dropped.
    const std::size_t width = (r.slots + config.budget - 1) / config.budget;
    for (std::size_t k = 1; k + width <= r.slots; ++k) {
      lp::Constraint row{{}, lp::Relation::LessEqual, static_cast<double>(config.rate),
                         fmt::format("window_{}", k)};
      for (std::size_t j = std::max<std::size_t>(k, 2); j <= k + width; ++j) {
        for (ModelIndex m = 0; m < r.models; ++m) row.terms.push_back({r.switch_var(m, j - 1), 0.5});
      }
      lp.add_constraint(std::move(row));
      ++r.window_rows;
    }
  }
  return r;
}

FractionalSolution solve_lp(const RelaxedProgram& relaxed, const lp::SimplexOptions& options) {
  const auto sol = lp::solve(relaxed.program, options);
  switch (sol.status) {
    case lp::Status::Optimal: break;
    case lp::Status::Infeasible: throw ConfigError("LP relaxation is infeasible");
    case lp::Status::Unbounded:
      // Every variable is bounded through the column sums and linking rows.
      assert(false && "LP relaxation reported unbounded");
      throw Error("LP relaxation reported unbounded");
    case lp::Status::IterationLimit: throw Error("simplex iteration limit reached");
  }

  FractionalSolution out;
  out.values = Grid<double>(relaxed.models, relaxed.slots);
  out.switch_values = Grid<double>(relaxed.models, relaxed.slots > 0 ? relaxed.slots - 1 : 0);
  for (ModelIndex m = 0; m < relaxed.models; ++m) {
    for (SlotIndex t = 0; t < relaxed.slots; ++t) {
      out.values(m, t) = std::clamp(sol.x[relaxed.assignment_var(m, t)], 0.0, 1.0);
      if (t > 0) out.switch_values(m, t - 1) = std::max(0.0, sol.x[relaxed.switch_var(m, t)]);
    }
  }
  out.objective = sol.objective;
  out.iterations = sol.iterations;
  return out;
}

FractionalSolution solve_relaxation(const BinaryTrustMatrix& a, const BudgetConfig& config,
                                    bool include_rate_windows) {
  return solve_lp(build_lp(a, config, include_rate_windows));
}

void write_lp_format(std::ostream& out, const lp::LinearProgram& program) {
  const auto& names = program.names();
  auto term_text = [&](double coef, std::size_t var, bool first) {
    const double mag = std::abs(coef);
    std::string text;
    if (coef < 0) {
      text += "- ";
    } else if (!first) {
      text += "+ ";
    }
    if (mag != 1.0) text += fmt::format("{:.17g} ", mag);
    text += names[var];
    return text;
  };

  out << "\\ model selection LP relaxation\n";
  out << "Maximize\n obj:";
  bool first = true;
  for (std::size_t j = 0; j < program.variable_count(); ++j) {
    if (program.objective()[j] == 0.0) continue;
    out << ' ' << term_text(program.objective()[j], j, first);
    first = false;
  }
  if (first) out << " 0 " << names.front();
  out << "\nSubject To\n";
  std::size_t idx = 0;
  for (const auto& row : program.constraints()) {
    const std::string name = row.name.empty() ? fmt::format("c{}", idx) : row.name;
    out << ' ' << name << ':';
    bool f = true;
    for (const auto& t : row.terms) {
      if (t.coef == 0.0) continue;
      out << ' ' << term_text(t.coef, t.var, f);
      f = false;
    }
    const char* rel = row.relation == lp::Relation::LessEqual  ? "<="
                      : row.relation == lp::Relation::Equal    ? "="
                                                               : ">=";
    out << ' ' << rel << ' ' << fmt::format("{:.17g}", row.rhs) << '\n';
    ++idx;
  }
  out << "Bounds\n";
  for (std::size_t j = 0; j < program.variable_count(); ++j) {
    const auto& b = program.bounds()[j];
    if (std::isfinite(b.hi)) {
      out << ' ' << fmt::format("{:.17g}", b.lo) << " <= " << names[j] << " <= "
          << fmt::format("{:.17g}", b.hi) << '\n';
    } else if (b.lo != 0.0) {
      out << ' ' << names[j] << " >= " << fmt::format("{:.17g}", b.lo) << '\n';
    }
  }
  out << "End\n";
}

}  // namespace trustsel
