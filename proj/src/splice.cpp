#include "trustsel/splice.hpp"

#include <algorithm>
#include <iterator>

namespace trustsel {
namespace {

// Strict "better" ordering for anchor candidates: longer, then lower row,
// then earlier start.
bool better_run(const Run& lhs, const Run& rhs) {
  if (lhs.length != rhs.length) return lhs.length > rhs.length;
  if (lhs.row != rhs.row) return lhs.row < rhs.row;
  return lhs.start < rhs.start;
}

void merge_selected_neighbours(std::vector<Segment>& segs, std::size_t at, bool& merged) {
  auto same_row = [](const Segment& a, const Segment& b) {
    return a.selected && b.selected && a.row == b.row;
  };
  if (at + 1 < segs.size() && same_row(segs[at], segs[at + 1])) {
    segs[at].end = segs[at + 1].end;
    segs.erase(segs.begin() + static_cast<std::ptrdiff_t>(at) + 1);
    merged = true;
  }
  if (at > 0 && same_row(segs[at - 1], segs[at])) {
    segs[at - 1].end = segs[at].end;
    segs.erase(segs.begin() + static_cast<std::ptrdiff_t>(at));
    merged = true;
  }
}

}  // namespace

std::optional<Run> longest_run(const BinaryTrustMatrix& a, const Segment& segment,
                               std::size_t min_length) {
  std::optional<Run> best;
  for (ModelIndex m = 0; m < a.model_count(); ++m) {
    SlotIndex t = segment.start;
    while (t < segment.end) {
      if (!a.trusted(m, t)) {
        ++t;
        continue;
      }
      const SlotIndex begin = t;
      while (t < segment.end && a.trusted(m, t)) ++t;
      const Run run{m, begin, t - begin};
      if (run.length >= min_length && (!best || better_run(run, *best))) best = run;
    }
  }
  return best;
}

SpliceResult splice_run(const BinaryTrustMatrix& a, const BudgetConfig& config) {
  const std::size_t slots = a.slot_count();
  config.validate_for(slots);

  SpliceResult result;
  std::vector<Segment> segs{{0, slots, std::nullopt, false}};

  // Greedy phase: each non-merging selection spends one of B+1 anchors.
  std::size_t spent = 0;
  while (spent <= config.budget) {
    std::optional<Run> best;
    std::size_t best_seg = 0;
    for (std::size_t s = 0; s < segs.size(); ++s) {
      if (segs[s].selected || segs[s].width() < config.rate) continue;
      const auto run = longest_run(a, segs[s], config.rate);
      if (run && (!best || better_run(*run, *best))) {
        best = run;
        best_seg = s;
      }
    }
    if (!best) break;
    result.anchors.push_back(*best);

    const Segment host = segs[best_seg];
    std::vector<Segment> parts;
    if (host.start < best->start) parts.push_back({host.start, best->start, std::nullopt, false});
    parts.push_back({best->start, best->end(), best->row, true});
    if (best->end() < host.end) parts.push_back({best->end(), host.end, std::nullopt, false});
    const std::size_t chosen = best_seg + (host.start < best->start ? 1 : 0);
    segs.erase(segs.begin() + static_cast<std::ptrdiff_t>(best_seg));
    segs.insert(segs.begin() + static_cast<std::ptrdiff_t>(best_seg), parts.begin(), parts.end());

    bool merged = false;
    merge_selected_neighbours(segs, chosen, merged);
    if (!merged) ++spent;
  }

  // Coalesce neighbouring unselected segments.
  std::vector<Segment> coalesced;
  for (const auto& seg : segs) {
    if (!coalesced.empty() && !seg.selected && !coalesced.back().selected) {
      coalesced.back().end = seg.end;
    } else {
      coalesced.push_back(seg);
    }
  }
  segs = std::move(coalesced);

  const bool any_selected =
      std::any_of(segs.begin(), segs.end(), [](const Segment& s) { return s.selected; });
  if (!any_selected) {
    // No run reached R: deploy the row with the largest total everywhere.
    ModelIndex best_row = 0;
    std::size_t best_sum = 0;
    for (ModelIndex m = 0; m < a.model_count(); ++m) {
      const auto sum = a.row_sum(m, 0, slots);
      if (sum > best_sum) {
        best_sum = sum;
        best_row = m;
      }
    }
    segs = {{0, slots, best_row, true}};
    result.fallback = true;
  }

  // Fill phase, decided against the pre-fill neighbours.
  std::vector<Segment> filled = segs;
  for (std::size_t s = 0; s < segs.size(); ++s) {
    if (segs[s].selected) continue;
    std::optional<ModelIndex> pick;
    std::size_t left_sum = 0;
    if (s > 0 && segs[s - 1].selected) {
      pick = segs[s - 1].row;
      left_sum = a.row_sum(*pick, segs[s].start, segs[s].end);
    }
    if (s + 1 < segs.size() && segs[s + 1].selected) {
      const ModelIndex right = *segs[s + 1].row;
      const std::size_t right_sum = a.row_sum(right, segs[s].start, segs[s].end);
      if (!pick || right_sum > left_sum) pick = right;
    }
    filled[s].row = pick;
    filled[s].selected = true;
  }

  std::vector<ModelIndex> assignment(slots, 0);
  for (const auto& seg : filled) {
    std::fill(assignment.begin() + static_cast<std::ptrdiff_t>(seg.start),
              assignment.begin() + static_cast<std::ptrdiff_t>(seg.end), *seg.row);
  }
  result.segments = std::move(filled);
  result.plan = make_plan(std::move(assignment), a);
  return result;
}

}  // namespace trustsel
