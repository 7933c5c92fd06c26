#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace trustsel::lp {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class Relation { LessEqual, Equal, GreaterEqual };

struct Term {
  std::size_t var;
  double coef;
};

struct Constraint {
  std::vector<Term> terms;
  Relation relation = Relation::LessEqual;
  double rhs = 0.0;
  std::string name;
};

struct Bound {
  double lo = 0.0;
  double hi = kInfinity;
};

/// Maximisation problem in row form. Lower bounds must be finite; upper bounds
/// may be +inf.
class LinearProgram {
 public:
  std::size_t add_variable(std::string name, double objective, Bound bound = {});
  void add_constraint(Constraint row);

  std::size_t variable_count() const noexcept { return objective_.size(); }
  std::size_t constraint_count() const noexcept { return rows_.size(); }

  const std::vector<double>& objective() const noexcept { return objective_; }
  const std::vector<Bound>& bounds() const noexcept { return bounds_; }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::vector<Constraint>& constraints() const noexcept { return rows_; }

  /// Objective value of a point.
  double evaluate(const std::vector<double>& x) const;

  /// Largest violation of any row or bound at x (0 when feasible).
  double max_violation(const std::vector<double>& x) const;

 private:
  std::vector<double> objective_;
  std::vector<Bound> bounds_;
  std::vector<std::string> names_;
  std::vector<Constraint> rows_;
};

enum class Status { Optimal, Infeasible, Unbounded, IterationLimit };

const char* to_string(Status s) noexcept;

struct Solution {
  Status status = Status::Infeasible;
  std::vector<double> x;
  double objective = 0.0;
  std::size_t iterations = 0;
};

enum class PivotRule {
  // Smallest-index entering and leaving choice throughout.
  Bland,
  // Most negative reduced cost, handing over to Bland's rule during runs of
  // degenerate pivots until the objective moves again.
  DantzigBlandFallback,
};

struct SimplexOptions {
  PivotRule rule = PivotRule::DantzigBlandFallback;
  double pivot_tolerance = 1e-9;
  double feasibility_tolerance = 1e-6;
  std::size_t degenerate_streak = 50;
  std::size_t max_iterations = 1'000'000;
};

/// Two-phase dense tableau simplex.
Solution solve(const LinearProgram& program, const SimplexOptions& options = {});

}  // namespace trustsel::lp
