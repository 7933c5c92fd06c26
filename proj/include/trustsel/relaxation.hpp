#pragma once

#include <cstddef>
#include <iosfwd>

#include "trustsel/grid.hpp"
#include "trustsel/simplex.hpp"
#include "trustsel/types.hpp"

namespace trustsel {

/// LP relaxation of the selection problem together with its variable layout.
///
/// Variables: a(i,j) in [0,1] for every model and slot, then s(i,j) >= 0 for
/// j >= 1 bounding |a(i,j) - a(i,j-1)| from above. Rows: one column-sum
/// equality per slot, one budget row, two linking rows per s, and optionally
/// one sliding rate-window row per window start.
struct RelaxedProgram {
  lp::LinearProgram program;
  std::size_t models = 0;
  std::size_t slots = 0;

  std::size_t column_rows = 0;
  std::size_t budget_rows = 0;
  std::size_t link_rows = 0;
  std::size_t window_rows = 0;

  std::size_t assignment_var(ModelIndex m, SlotIndex t) const { return m * slots + t; }
  // Valid for t >= 1.
  std::size_t switch_var(ModelIndex m, SlotIndex t) const {
    return models * slots + m * (slots - 1) + (t - 1);
  }
  std::size_t assignment_count() const { return models * slots; }
  std::size_t switch_count() const { return models * (slots - 1); }
};

/// Builds the relaxation with 0/1 payoffs from `a`. The rate windows have
/// width ceil(T/B); they need B > 0 and are off by default.
RelaxedProgram build_lp(const BinaryTrustMatrix& a, const BudgetConfig& config,
                        bool include_rate_windows = false);

struct FractionalSolution {
  Grid<double> values;        // a(i,j)
  Grid<double> switch_values; // s(i,j), column j-1 holds slot j
  double objective = 0.0;
  std::size_t iterations = 0;
};

/// Solves the relaxation to optimality. Throws ConfigError when infeasible.
FractionalSolution solve_lp(const RelaxedProgram& relaxed, const lp::SimplexOptions& options = {});

/// Convenience: build_lp + solve_lp.
FractionalSolution solve_relaxation(const BinaryTrustMatrix& a, const BudgetConfig& config,
                                    bool include_rate_windows = false);

/// Writes the program in CPLEX LP text format (Maximize / Subject To /
/// Bounds / End).
void write_lp_format(std::ostream& out, const lp::LinearProgram& program);

}  // namespace trustsel
