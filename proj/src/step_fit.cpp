#include "jumpreg/step_fit.hpp"

#include <algorithm>
#include <cmath>

#include "jumpreg/errors.hpp"

namespace jumpreg {

namespace {

// Maps break values to split indices (last observation with x <= gamma)
// and validates that every window catches at least one observation.
std::vector<int> splits_from_breakpoints(const Dataset& data,
                                         std::span<const double> breakpoints) {
  const int n = data.n();
  for (std::size_t j = 0; j < breakpoints.size(); ++j) {
    if (j > 0 && !(breakpoints[j] > breakpoints[j - 1])) {
      throw Error(Errc::non_increasing,
                  "breakpoints must be strictly increasing");
    }
    if (!(breakpoints[j] > data.x.front()) ||
        !(breakpoints[j] < data.x.back())) {
      throw Error(Errc::non_increasing,
                  "breakpoints must lie strictly inside the data range");
    }
  }
  std::vector<int> splits;
  splits.reserve(breakpoints.size());
  for (double g : breakpoints) {
    const auto it = std::upper_bound(data.x.begin(), data.x.end(), g);
    splits.push_back(static_cast<int>(it - data.x.begin()));
  }
  int prev = 0;
  for (int s : splits) {
    if (s <= prev) {
      throw Error(Errc::empty_window, "a window contains no observation");
    }
    prev = s;
  }
  if (prev >= n) {
    throw Error(Errc::empty_window, "last window contains no observation");
  }
  return splits;
}

}  // namespace

StepFit fit_from_splits(const Dataset& data, const PrefixSums& ps,
                        std::span<const int> splits) {
  StepFit fit;
  fit.n = data.n();
  fit.split_index.assign(splits.begin(), splits.end());
  fit.breakpoints.reserve(splits.size());
  for (int s : splits) {
    fit.breakpoints.push_back(0.5 * (data.x[s - 1] + data.x[s]));
  }
  const int d = static_cast<int>(splits.size()) + 1;
  fit.levels.reserve(d);
  int lo = 1;
  for (int w = 0; w < d; ++w) {
    const int hi = (w == d - 1) ? fit.n : splits[w];
    fit.levels.push_back(segment_mean(ps, lo, hi));
    lo = hi + 1;
  }
  fit.rss = partition_cost(ps, splits);
  fit.sigma0_hat = std::sqrt(fit.rss / fit.n);
  fit.loglik_max = -fit.n * std::log(fit.sigma0_hat) - 0.5 * fit.n;
  return fit;
}

StepFit profile_fit(const Dataset& data, std::span<const double> breakpoints) {
  const std::vector<int> splits = splits_from_breakpoints(data, breakpoints);
  const PrefixSums ps = PrefixSums::from(data.y);
  return fit_from_splits(data, ps, splits);
}

double weighted_level_score(const Dataset& data,
                            std::span<const double> breakpoints) {
  const std::vector<int> splits = splits_from_breakpoints(data, breakpoints);
  const PrefixSums ps = PrefixSums::from(data.y);
  const int d = static_cast<int>(splits.size()) + 1;
  double score = 0.0;
  int lo = 1;
  for (int w = 0; w < d; ++w) {
    const int hi = (w == d - 1) ? data.n() : splits[w];
    const double mean = segment_mean(ps, lo, hi);
    score += (hi - lo + 1) * mean * mean;
    lo = hi + 1;
  }
  return score;
}

double predict(const StepFit& fit, double x0) {
  const auto it =
      std::lower_bound(fit.breakpoints.begin(), fit.breakpoints.end(), x0);
  return fit.levels[it - fit.breakpoints.begin()];
}

}  // namespace jumpreg
