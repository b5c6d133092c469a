#pragma once

#include <span>
#include <vector>

#include "jumpreg/dataset.hpp"
#include "jumpreg/prefix_sums.hpp"

namespace jumpreg {

// A fitted step function: d windows separated by d-1 break points, with
// windows (gamma_{j-1}, gamma_j], so a point on a break belongs to the
// window on its left. Break points are reported as midpoints of the
// inter-observation gap; split_index holds the equivalent integer form
// (1-based index of the last observation of each window).
struct StepFit {
  std::vector<double> breakpoints;  // d-1, strictly increasing
  std::vector<double> levels;       // d, per-window means of y
  std::vector<int> split_index;     // d-1
  double rss = 0.0;
  double sigma0_hat = 0.0;  // sqrt(rss / n)
  double loglik_max = 0.0;  // -n log(sigma0_hat) - n/2
  int n = 0;

  int d() const { return static_cast<int>(levels.size()); }
};

// Profile least squares given the break points: levels are per-window
// means, which minimise the SSE for the fixed partition.
StepFit profile_fit(const Dataset& data, std::span<const double> breakpoints);

// Same fit addressed by split indices; used by the segmentation search.
StepFit fit_from_splits(const Dataset& data, const PrefixSums& ps,
                        std::span<const int> splits);

// sum_j n_j * mean_j^2. Maximising this over partitions is equivalent to
// minimising the profile RSS: sum y_i^2 = weighted_level_score + rss.
double weighted_level_score(const Dataset& data,
                            std::span<const double> breakpoints);

double predict(const StepFit& fit, double x0);

}  // namespace jumpreg
