#pragma once

// Independent reference implementations used only by the tests. None of this
// shares code with the library solvers.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "trustsel/simplex.hpp"
#include "trustsel/types.hpp"

namespace trustsel::ref {

inline BinaryTrustMatrix random_binary(std::mt19937_64& rng, std::size_t models, std::size_t slots,
                                       double density) {
  std::bernoulli_distribution coin(density);
  Grid<std::uint8_t> g(models, slots);
  for (std::size_t m = 0; m < models; ++m)
    for (std::size_t t = 0; t < slots; ++t) g(m, t) = coin(rng) ? 1 : 0;
  return BinaryTrustMatrix(std::move(g));
}

template <class T>
T uniform_int(std::mt19937_64& rng, T lo, T hi) {
  return std::uniform_int_distribution<T>(lo, hi)(rng);
}

// Exhaustive optimum: every composition of T into k <= B+1 runs (all runs but
// the last at least R long) times every labeling of the runs. Adjacent runs
// may share a label; that only duplicates plans already covered.
inline std::int64_t brute_force_best(const BinaryTrustMatrix& a, std::size_t budget,
                                     std::size_t rate) {
  const std::size_t M = a.model_count();
  const std::size_t T = a.slot_count();
  // prefix[m][t] = trusted count of row m over [0, t)
  std::vector<std::vector<std::int64_t>> prefix(M, std::vector<std::int64_t>(T + 1, 0));
  for (std::size_t m = 0; m < M; ++m)
    for (std::size_t t = 0; t < T; ++t) prefix[m][t + 1] = prefix[m][t] + (a.trusted(m, t) ? 1 : 0);

  std::int64_t best = std::numeric_limits<std::int64_t>::min();
  std::vector<std::size_t> cuts;  // run boundaries after 0

  // Best labeling decomposes per run since labels are unconstrained.
  const auto score_cuts = [&] {
    std::int64_t total = 0;
    std::size_t begin = 0;
    for (std::size_t k = 0; k <= cuts.size(); ++k) {
      const std::size_t end = k < cuts.size() ? cuts[k] : T;
      std::int64_t run_best = 0;
      for (std::size_t m = 0; m < M; ++m) run_best = std::max(run_best, prefix[m][end] - prefix[m][begin]);
      total += run_best;
      begin = end;
    }
    best = std::max(best, total);
  };

  std::function<void(std::size_t)> extend = [&](std::size_t start) {
    score_cuts();
    if (cuts.size() >= budget) return;
    for (std::size_t next = start + rate; next < T; ++next) {
      cuts.push_back(next);
      extend(next);
      cuts.pop_back();
    }
  };
  extend(0);
  return best;
}

// Exhaustive over all M^T assignments, with feasibility checked from scratch.
// Only for very small instances.
inline std::int64_t brute_force_assignments(const BinaryTrustMatrix& a, std::size_t budget,
                                            std::size_t rate) {
  const std::size_t M = a.model_count();
  const std::size_t T = a.slot_count();
  std::vector<std::size_t> x(T, 0);
  std::int64_t best = -1;
  while (true) {
    std::size_t switches = 0;
    bool ok = true;
    std::size_t run = 1;
    for (std::size_t t = 1; t < T && ok; ++t) {
      if (x[t] != x[t - 1]) {
        ++switches;
        if (run < rate) ok = false;
        run = 1;
      } else {
        ++run;
      }
    }
    if (ok && switches <= budget) {
      std::int64_t s = 0;
      for (std::size_t t = 0; t < T; ++t) s += a.trusted(x[t], t) ? 1 : 0;
      best = std::max(best, s);
    }
    std::size_t i = 0;
    while (i < T && ++x[i] == M) x[i++] = 0;
    if (i == T) break;
  }
  return best;
}

// Maximum of a small LP by enumerating basic solutions: pick n linearly
// independent active constraints (rows at equality or variable bounds), solve,
// keep feasible points. Returns nullopt when no vertex is feasible.
inline std::optional<double> vertex_enumeration_max(const lp::LinearProgram& program,
                                                    double tol = 1e-7) {
  const std::size_t n = program.variable_count();
  struct Plane {
    Eigen::VectorXd normal;
    double rhs;
    bool forced;
  };
  std::vector<Plane> planes;
  for (const auto& row : program.constraints()) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
    for (const auto& term : row.terms) v(static_cast<Eigen::Index>(term.var)) += term.coef;
    planes.push_back({v, row.rhs, row.relation == lp::Relation::Equal});
  }
  for (std::size_t j = 0; j < n; ++j) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
    v(static_cast<Eigen::Index>(j)) = 1.0;
    planes.push_back({v, program.bounds()[j].lo, false});
    if (std::isfinite(program.bounds()[j].hi)) planes.push_back({v, program.bounds()[j].hi, false});
  }

  std::vector<std::size_t> forced, optional;
  for (std::size_t i = 0; i < planes.size(); ++i) (planes[i].forced ? forced : optional).push_back(i);

  std::optional<double> best;
  std::vector<std::size_t> chosen = forced;
  std::function<void(std::size_t)> pick = [&](std::size_t from) {
    if (chosen.size() == n) {
      Eigen::MatrixXd A(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
      Eigen::VectorXd b(static_cast<Eigen::Index>(n));
      for (std::size_t r = 0; r < n; ++r) {
        A.row(static_cast<Eigen::Index>(r)) = planes[chosen[r]].normal.transpose();
        b(static_cast<Eigen::Index>(r)) = planes[chosen[r]].rhs;
      }
      Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
      if (lu.rank() < static_cast<Eigen::Index>(n)) return;
      const Eigen::VectorXd x = lu.solve(b);
      std::vector<double> point(x.data(), x.data() + n);
      if (program.max_violation(point) > tol) return;
      const double value = program.evaluate(point);
      if (!best || value > *best) best = value;
      return;
    }
    for (std::size_t k = from; k < optional.size(); ++k) {
      if (optional.size() - k < n - chosen.size()) break;
      chosen.push_back(optional[k]);
      pick(k + 1);
      chosen.pop_back();
    }
  };
  if (forced.size() <= n) pick(0);
  return best;
}

}  // namespace trustsel::ref
