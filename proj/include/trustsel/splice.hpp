#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "trustsel/types.hpp"

namespace trustsel {

// Contiguous block of slots [start, end). Selected segments carry the model
// deployed over them.
struct Segment {
  SlotIndex start = 0;
  SlotIndex end = 0;
  std::optional<ModelIndex> row;
  bool selected = false;

  std::size_t width() const noexcept { return end - start; }
};

// A run of consecutive trusted slots of one model.
struct Run {
  ModelIndex row = 0;
  SlotIndex start = 0;
  std::size_t length = 0;

  SlotIndex end() const noexcept { return start + length; }
  friend bool operator==(const Run&, const Run&) = default;
};

/// Longest run of 1s lying fully inside `segment` whose length is at least
/// `min_length`. Ties go to the lowest row, then the earliest start.
std::optional<Run> longest_run(const BinaryTrustMatrix& a, const Segment& segment,
                               std::size_t min_length);

struct SpliceResult {
  SelectionPlan plan;
  // Runs claimed by the greedy phase, in selection order.
  std::vector<Run> anchors;
  // Final partition of [0, T) after gap filling, every segment selected.
  std::vector<Segment> segments;
  // True when no run reached the dwell length and the whole horizon fell back
  // to the row with the largest total.
  bool fallback = false;
};

/// Lower-bound solver. Greedily claims up to B+1 longest all-trusted runs of
/// length >= R, then fills each remaining gap with whichever neighbouring
/// selected model is trusted more often inside the gap (left on ties).
SpliceResult splice_run(const BinaryTrustMatrix& a, const BudgetConfig& config);

inline SelectionPlan splice_select(const BinaryTrustMatrix& a, const BudgetConfig& config) {
  return splice_run(a, config).plan;
}

}  // namespace trustsel
