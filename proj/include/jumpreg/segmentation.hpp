#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "jumpreg/dataset.hpp"
#include "jumpreg/step_fit.hpp"

namespace jumpreg {

struct SegConfig {
  int d = 1;                  // number of windows
  int min_seg_len = 2;        // minimum observations per window
  bool prune = false;
  std::optional<double> incumbent_rss;  // achievable RSS used as bound
};

struct DpStats {
  std::uint64_t cost_evals = 0;    // segment-cost evaluations performed
  std::uint64_t skipped_evals = 0; // evaluations avoided by pruning
};

struct DpResult {
  StepFit fit;
  DpStats stats;
};

// Exact minimisation of the profile RSS over all placements of d-1 splits
// with every window holding at least min_seg_len observations. The DP runs
// over suffixes and keeps the smallest first-split on ties, so ties resolve
// to the lexicographically smallest split vector.
DpResult dp_optimal(const Dataset& data, const SegConfig& cfg);

// Identical output to dp_optimal. States whose accumulated SSE already
// exceeds the incumbent (plus the zero lower bound for the remaining
// segments) are cut, which is exact because segment costs are nonnegative.
DpResult dp_pruned(const Dataset& data, const SegConfig& cfg);

struct GreedyInit {
  std::vector<int> splits;
  double rss = 0.0;
  std::uint64_t cost_evals = 0;
};

// Fast initial estimate: repeatedly add the single best split given the
// current ones, then walk back through the previously placed splits,
// re-optimising each between its neighbours while positions keep moving.
// The result is a valid (generally suboptimal) incumbent for dp_pruned.
GreedyInit greedy_init(const Dataset& data, int d, int min_seg_len = 2);

// Exhaustive oracle over all C(n-1, d-1) split placements, same tie-break
// as the DP. Guarded to at most 1e7 placements.
StepFit brute_force(const Dataset& data, const SegConfig& cfg);

}  // namespace jumpreg
