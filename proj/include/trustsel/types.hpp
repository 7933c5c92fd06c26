#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "trustsel/grid.hpp"

namespace trustsel {

using ModelIndex = std::size_t;
using SlotIndex = std::size_t;

/// Raw ensemble outputs: one row per model, one column per time slot.
///
/// Construction validates that the matrix is non-empty, every entry is finite
/// and model ids are unique and aligned with rows; otherwise InputError.
class ModelOutputs {
 public:
  ModelOutputs(std::vector<std::string> model_ids, Grid<double> values);

  /// Labels models "m0", "m1", ...
  static ModelOutputs with_default_ids(Grid<double> values);

  const Grid<double>& values() const noexcept { return values_; }
  const std::vector<std::string>& model_ids() const noexcept { return ids_; }
  std::size_t model_count() const noexcept { return values_.rows(); }
  std::size_t slot_count() const noexcept { return values_.cols(); }

 private:
  std::vector<std::string> ids_;
  Grid<double> values_;
};

/// Agreement-based trust levels, every entry in [0, p_max].
class TrustMatrix {
 public:
  TrustMatrix(Grid<double> values, double p_max);

  const Grid<double>& values() const noexcept { return values_; }
  double p_max() const noexcept { return p_max_; }
  double operator()(ModelIndex m, SlotIndex t) const { return values_(m, t); }

 private:
  Grid<double> values_;
  double p_max_;
};

/// 0/1 matrix marking which model is trusted at which slot. This is the payoff
/// matrix every solver consumes.
class BinaryTrustMatrix {
 public:
  explicit BinaryTrustMatrix(Grid<std::uint8_t> values);

  /// Builds from nested rows; throws InputError on ragged rows or entries
  /// other than 0 and 1.
  static BinaryTrustMatrix from_rows(const std::vector<std::vector<int>>& rows);

  const Grid<std::uint8_t>& values() const noexcept { return values_; }
  std::size_t model_count() const noexcept { return values_.rows(); }
  std::size_t slot_count() const noexcept { return values_.cols(); }
  bool trusted(ModelIndex m, SlotIndex t) const { return values_(m, t) != 0; }

  /// Number of trusted entries of row m over [begin, end).
  std::size_t row_sum(ModelIndex m, SlotIndex begin, SlotIndex end) const;

  /// Slots in which no model is trusted, ascending.
  std::vector<SlotIndex> failsafe_slots() const;

  friend bool operator==(const BinaryTrustMatrix&, const BinaryTrustMatrix&) = default;

 private:
  Grid<std::uint8_t> values_;
};

/// One model per slot, with derived switch count, score and fail-safe slots.
struct SelectionPlan {
  std::vector<ModelIndex> assignment;
  std::size_t switch_count = 0;
  std::int64_t trust_score = 0;
  std::vector<SlotIndex> failsafe_slots;

  std::size_t slot_count() const noexcept { return assignment.size(); }
};

/// Number of adjacent slot pairs whose models differ.
std::size_t count_switches(const std::vector<ModelIndex>& assignment);

/// Fills in switch count, score against `a` and fail-safe slots. Throws
/// InputError if the assignment length or any model index does not fit `a`.
SelectionPlan make_plan(std::vector<ModelIndex> assignment, const BinaryTrustMatrix& a);

/// Solver knobs. Defaults follow the traffic experiment settings.
struct BudgetConfig {
  std::size_t budget = 7;  // max reconfigurations B
  std::size_t rate = 4;    // minimum dwell R, in slots
  double p_max = 10.0;
  double lambda = 0.85;
  double h0 = 0.9;
  double eps = 0.05;

  /// Checks every knob domain; throws ConfigError.
  void validate() const;

  /// validate() plus (B+1)*R <= T.
  void validate_for(std::size_t slot_count) const;
};

}  // namespace trustsel
