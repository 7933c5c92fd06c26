#include "trustsel/simplex.hpp"

#include <algorithm>
#include <cmath>

#include "trustsel/error.hpp"

namespace trustsel::lp {

std::size_t LinearProgram::add_variable(std::string name, double objective, Bound bound) {
  if (!std::isfinite(bound.lo)) throw InputError("variable lower bounds must be finite");
  if (bound.lo > bound.hi) throw InputError("variable bound has lo > hi");
  objective_.push_back(objective);
  bounds_.push_back(bound);
  names_.push_back(std::move(name));
  return objective_.size() - 1;
}

void LinearProgram::add_constraint(Constraint row) {
  for (const auto& t : row.terms) {
    if (t.var >= objective_.size()) throw InputError("constraint references unknown variable");
  }
  rows_.push_back(std::move(row));
}

double LinearProgram::evaluate(const std::vector<double>& x) const {
  double z = 0.0;
  for (std::size_t j = 0; j < objective_.size(); ++j) z += objective_[j] * x[j];
  return z;
}

double LinearProgram::max_violation(const std::vector<double>& x) const {
  double worst = 0.0;
  for (std::size_t j = 0; j < bounds_.size(); ++j) {
    worst = std::max(worst, bounds_[j].lo - x[j]);
    if (std::isfinite(bounds_[j].hi)) worst = std::max(worst, x[j] - bounds_[j].hi);
  }
  for (const auto& row : rows_) {
    double lhs = 0.0;
    for (const auto& t : row.terms) lhs += t.coef * x[t.var];
    switch (row.relation) {
      case Relation::LessEqual: worst = std::max(worst, lhs - row.rhs); break;
      case Relation::GreaterEqual: worst = std::max(worst, row.rhs - lhs); break;
      case Relation::Equal: worst = std::max(worst, std::abs(lhs - row.rhs)); break;
    }
  }
  return worst;
}

const char* to_string(Status s) noexcept {
  switch (s) {
    case Status::Optimal: return "optimal";
    case Status::Infeasible: return "infeasible";
    case Status::Unbounded: return "unbounded";
    case Status::IterationLimit: return "iteration limit";
  }
  return "unknown";
}

namespace {

constexpr double kDropTolerance = 1e-13;

// Row in standard form over shifted variables (x' = x - lo >= 0), rhs >= 0.
struct StdRow {
  std::vector<Term> terms;
  Relation relation;
  double rhs;
};

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols, 0.0), b_(rows, 0.0), d_(cols, 0.0),
        basis_(rows, 0), banned_(cols, false) {}

  double& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  double at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }
  double& rhs(std::size_t r) { return b_[r]; }
  std::size_t& basic(std::size_t r) { return basis_[r]; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  void ban(std::size_t c) { banned_[c] = true; }
  double value() const { return z_; }

  // Reduced costs d_j = c_B B^-1 a_j - c_j and z = c_B x_B for cost vector c.
  void price(const std::vector<double>& cost) {
    for (std::size_t j = 0; j < cols_; ++j) d_[j] = -cost[j];
    z_ = 0.0;
    for (std::size_t r = 0; r < rows_; ++r) {
      const double cb = cost[basis_[r]];
      if (cb == 0.0) continue;
      const double* row = &a_[r * cols_];
      for (std::size_t j = 0; j < cols_; ++j) d_[j] += cb * row[j];
      z_ += cb * b_[r];
    }
  }

  void pivot(std::size_t pr, std::size_t pc) {
    double* prow = &a_[pr * cols_];
    const double inv = 1.0 / prow[pc];
    nz_.clear();
    for (std::size_t j = 0; j < cols_; ++j) {
      if (prow[j] == 0.0) continue;
      prow[j] *= inv;
      nz_.push_back(j);
    }
    prow[pc] = 1.0;
    b_[pr] *= inv;

    for (std::size_t r = 0; r < rows_; ++r) {
      if (r == pr) continue;
      double* row = &a_[r * cols_];
      const double f = row[pc];
      if (f == 0.0) continue;
      for (std::size_t j : nz_) {
        double v = row[j] - f * prow[j];
        row[j] = std::abs(v) < kDropTolerance ? 0.0 : v;
      }
      row[pc] = 0.0;
      b_[r] -= f * b_[pr];
      if (std::abs(b_[r]) < kDropTolerance) b_[r] = 0.0;
    }
    const double f = d_[pc];
    if (f != 0.0) {
      for (std::size_t j : nz_) {
        double v = d_[j] - f * prow[j];
        d_[j] = std::abs(v) < kDropTolerance ? 0.0 : v;
      }
      d_[pc] = 0.0;
      z_ -= f * b_[pr];
    }
    basis_[pr] = pc;
  }

  // Runs primal simplex from the current feasible basis.
  Status optimise(const SimplexOptions& opt, std::size_t& iterations) {
    std::size_t streak = 0;
    bool bland = opt.rule == PivotRule::Bland;
    while (true) {
      if (iterations >= opt.max_iterations) return Status::IterationLimit;

      std::size_t pc = cols_;
      double most_negative = -opt.pivot_tolerance;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (banned_[j] || d_[j] >= -opt.pivot_tolerance) continue;
        if (bland) {
          pc = j;
          break;
        }
        if (d_[j] < most_negative) {
          most_negative = d_[j];
          pc = j;
        }
      }
      if (pc == cols_) return Status::Optimal;

      std::size_t pr = rows_;
      double best_ratio = kInfinity;
      for (std::size_t r = 0; r < rows_; ++r) {
        const double coef = at(r, pc);
        if (coef <= opt.pivot_tolerance) continue;
        const double ratio = b_[r] / coef;
        if (pr == rows_ || ratio < best_ratio - 1e-12 ||
            (ratio <= best_ratio + 1e-12 && basis_[r] < basis_[pr])) {
          best_ratio = std::min(best_ratio, ratio);
          pr = r;
        }
      }
      if (pr == rows_) return Status::Unbounded;

      const bool degenerate = b_[pr] <= 1e-12;
      pivot(pr, pc);
      ++iterations;

      if (opt.rule == PivotRule::DantzigBlandFallback) {
        if (degenerate) {
          if (++streak >= opt.degenerate_streak) bland = true;
        } else {
          streak = 0;
          bland = false;
        }
      }
    }
  }

  // Drops row r by swapping the last row into it.
  void drop_row(std::size_t r) {
    const std::size_t last = rows_ - 1;
    if (r != last) {
      std::copy_n(&a_[last * cols_], cols_, &a_[r * cols_]);
      b_[r] = b_[last];
      basis_[r] = basis_[last];
    }
    a_.resize(last * cols_);
    b_.pop_back();
    basis_.pop_back();
    rows_ = last;
  }

  const std::vector<std::size_t>& basis() const { return basis_; }
  const std::vector<double>& rhs_values() const { return b_; }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> a_;
  std::vector<double> b_;
  std::vector<double> d_;
  double z_ = 0.0;
  std::vector<std::size_t> basis_;
  std::vector<bool> banned_;
  std::vector<std::size_t> nz_;
};

// Upper bound of x'_j implied by an equality row with non-negative
// coefficients over non-negative variables, if any.
std::vector<double> implied_upper_bounds(const std::vector<StdRow>& rows, std::size_t n) {
  std::vector<double> implied(n, kInfinity);
  for (const auto& row : rows) {
    if (row.relation != Relation::Equal) continue;
    const bool nonneg = std::all_of(row.terms.begin(), row.terms.end(),
                                    [](const Term& t) { return t.coef >= 0.0; });
    if (!nonneg) continue;
    for (const auto& t : row.terms) {
      if (t.coef > 0.0) implied[t.var] = std::min(implied[t.var], row.rhs / t.coef);
    }
  }
  return implied;
}

}  // namespace

Solution solve(const LinearProgram& program, const SimplexOptions& options) {
  const std::size_t n = program.variable_count();
  const auto& bounds = program.bounds();

  std::vector<StdRow> rows;
  rows.reserve(program.constraint_count());
  for (const auto& c : program.constraints()) {
    StdRow row{{}, c.relation, c.rhs};
    for (const auto& t : c.terms) {
      if (t.coef == 0.0) continue;
      row.terms.push_back(t);
      row.rhs -= t.coef * bounds[t.var].lo;
    }
    rows.push_back(std::move(row));
  }

  // Upper bounds become rows unless an equality row already implies them.
  const auto implied = implied_upper_bounds(rows, n);
  for (std::size_t j = 0; j < n; ++j) {
    if (!std::isfinite(bounds[j].hi)) continue;
    const double span = bounds[j].hi - bounds[j].lo;
    if (implied[j] <= span + 1e-12) continue;
    rows.push_back({{{j, 1.0}}, Relation::LessEqual, span});
  }

  for (auto& row : rows) {
    if (row.rhs >= 0.0) continue;
    row.rhs = -row.rhs;
    for (auto& t : row.terms) t.coef = -t.coef;
    if (row.relation == Relation::LessEqual) {
      row.relation = Relation::GreaterEqual;
    } else if (row.relation == Relation::GreaterEqual) {
      row.relation = Relation::LessEqual;
    }
  }

  std::size_t slack_count = 0;
  std::size_t artificial_count = 0;
  for (const auto& row : rows) {
    if (row.relation != Relation::Equal) ++slack_count;
    if (row.relation != Relation::LessEqual) ++artificial_count;
  }
  const std::size_t m = rows.size();
  const std::size_t first_slack = n;
  const std::size_t first_artificial = n + slack_count;
  const std::size_t cols = first_artificial + artificial_count;

  Tableau tab(m, cols);
  std::size_t next_slack = first_slack;
  std::size_t next_artificial = first_artificial;
  for (std::size_t r = 0; r < m; ++r) {
    const auto& row = rows[r];
    for (const auto& t : row.terms) tab.at(r, t.var) += t.coef;
    tab.rhs(r) = row.rhs;
    switch (row.relation) {
      case Relation::LessEqual:
        tab.at(r, next_slack) = 1.0;
        tab.basic(r) = next_slack++;
        break;
      case Relation::GreaterEqual:
        tab.at(r, next_slack++) = -1.0;
        tab.at(r, next_artificial) = 1.0;
        tab.basic(r) = next_artificial++;
        break;
      case Relation::Equal:
        tab.at(r, next_artificial) = 1.0;
        tab.basic(r) = next_artificial++;
        break;
    }
  }

  Solution sol;
  if (artificial_count > 0) {
    std::vector<double> phase1(cols, 0.0);
    for (std::size_t j = first_artificial; j < cols; ++j) phase1[j] = -1.0;
    tab.price(phase1);
    sol.status = tab.optimise(options, sol.iterations);
    if (sol.status == Status::IterationLimit) return sol;
    if (tab.value() < -options.feasibility_tolerance) {
      sol.status = Status::Infeasible;
      return sol;
    }
    // Pivot zero-level artificials out of the basis, dropping redundant rows.
    for (std::size_t r = 0; r < tab.rows();) {
      if (tab.basis()[r] < first_artificial) {
        ++r;
        continue;
      }
      std::size_t pc = first_artificial;
      for (std::size_t j = 0; j < first_artificial; ++j) {
        if (std::abs(tab.at(r, j)) > options.pivot_tolerance) {
          pc = j;
          break;
        }
      }
      if (pc == first_artificial) {
        tab.drop_row(r);
        continue;
      }
      tab.pivot(r, pc);
      ++r;
    }
    for (std::size_t j = first_artificial; j < cols; ++j) tab.ban(j);
  }

  std::vector<double> cost(cols, 0.0);
  std::copy(program.objective().begin(), program.objective().end(), cost.begin());
  tab.price(cost);
  sol.status = tab.optimise(options, sol.iterations);
  if (sol.status != Status::Optimal) return sol;

  sol.x.assign(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) sol.x[j] = bounds[j].lo;
  for (std::size_t r = 0; r < tab.rows(); ++r) {
    const std::size_t j = tab.basis()[r];
    if (j < n) sol.x[j] += tab.rhs_values()[r];
  }
  sol.objective = program.evaluate(sol.x);
  return sol;
}

}  // namespace trustsel::lp
