#pragma once

#include <vector>

#include "trustsel/types.hpp"

namespace trustsel::ref {

// Five models over 16 slots, R=4, B=2. Row 2 owns slots 0-3, row 1 slots 6-9
// and row 3 slots 12-15, each a run of exactly four. Row 1 is trusted once in
// the 4-5 gap where row 2 is not; row 3 is trusted once in the 10-11 gap where
// row 1 is not. Rows 0 and 4 alternate so they never form a run of two.
inline BinaryTrustMatrix splice_walkthrough_matrix() {
  return BinaryTrustMatrix::from_rows({
      {1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0},
      {0, 0, 0, 0, 1, 0, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0},
      {1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
      {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 1, 1, 1, 1},
      {0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1},
  });
}

inline std::vector<ModelIndex> splice_walkthrough_expected() {
  std::vector<ModelIndex> plan(16);
  for (std::size_t t = 0; t < 16; ++t) plan[t] = t < 4 ? 2 : (t < 10 ? 1 : 3);
  return plan;
}

// Ten readings with 174 second-smallest and 188 eighth-smallest, each value
// appearing twice.
inline std::vector<double> percentile_list() {
  return {180, 174, 192, 188, 170, 185, 174, 188, 178, 195};
}

}  // namespace trustsel::ref
