#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "jumpreg/dataset.hpp"

namespace jumpreg {

// Exact marginal posterior of the break point in the two-window model
// under reference priors (flat levels, flat log sigma, uniform break).
// The posterior is piecewise constant over inter-observation gaps; the gap
// after observation k carries log weight
//   log(gap length) - (1/2) log(k (n-k)) - ((n-2)/2) log RSS_k.
struct BreakPosterior {
  std::vector<int> split_index;          // k per gap (1-based)
  std::vector<double> interval_lefts;    // x_k
  std::vector<double> interval_rights;   // x_{k+1}
  std::vector<double> log_weights;       // unnormalized
  std::vector<double> weights;           // normalized, sums to one
  double posterior_mean = 0.0;
  std::pair<double, double> credible_interval{0.0, 0.0};
  double level = 0.95;
};

BreakPosterior posterior_gamma(const Dataset& data, int min_seg_len,
                               double level = 0.95);

// Posterior mean, the Bayes estimator under quadratic loss.
double bayes_estimate(const BreakPosterior& post);

struct TwoWindowScenario {
  double a0 = 2.0;
  double b0 = 3.0;
  double gamma0 = 0.4;
  double sigma = 0.5;
  int n = 500;  // uniform design on (0, 1)
};

struct MseCompareResult {
  double mse_ml = 0.0;
  double mse_bayes = 0.0;
  double se_diff = 0.0;  // paired standard error of the difference
  int replicates = 0;
};

// Simulates the two-window model and compares n(gamma_hat - gamma0) for
// the least squares and Bayes estimators.
MseCompareResult mse_compare(const TwoWindowScenario& scenario, int replicates,
                             std::uint64_t seed);

}  // namespace jumpreg
