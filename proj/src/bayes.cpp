#include "jumpreg/bayes.hpp"

#include <algorithm>
#include <cmath>

#include "jumpreg/errors.hpp"
#include "jumpreg/prefix_sums.hpp"
#include "jumpreg/rng.hpp"
#include "jumpreg/segmentation.hpp"

namespace jumpreg {

BreakPosterior posterior_gamma(const Dataset& data, int min_seg_len,
                               double level) {
  const int n = data.n();
  if (min_seg_len < 1) {
    throw Error(Errc::bad_param, "min_seg_len must be positive");
  }
  if (n < 2 * min_seg_len) {
    throw Error(Errc::too_few, "need n >= 2 * min_seg_len");
  }
  if (!(level > 0.0) || !(level < 1.0)) {
    throw Error(Errc::bad_prob, "level must lie in (0, 1)");
  }

  // Centre y so the weights are exactly invariant under location shifts.
  double mean = 0.0;
  for (double v : data.y) mean += v;
  mean /= n;
  std::vector<double> centred(data.y);
  for (double& v : centred) v -= mean;
  const PrefixSums ps = PrefixSums::from(centred);

  BreakPosterior post;
  post.level = level;
  const int k_lo = min_seg_len;
  const int k_hi = n - min_seg_len;
  for (int k = k_lo; k <= k_hi; ++k) {
    const double rss =
        std::max(segment_cost(ps, 1, k) + segment_cost(ps, k + 1, n), 1e-300);
    const double gap = data.x[k] - data.x[k - 1];
    const double lw = std::log(gap) -
                      0.5 * std::log(static_cast<double>(k) * (n - k)) -
                      0.5 * (n - 2) * std::log(rss);
    post.split_index.push_back(k);
    post.interval_lefts.push_back(data.x[k - 1]);
    post.interval_rights.push_back(data.x[k]);
    post.log_weights.push_back(lw);
  }

  const double lw_max =
      *std::max_element(post.log_weights.begin(), post.log_weights.end());
  double total = 0.0;
  post.weights.reserve(post.log_weights.size());
  for (double lw : post.log_weights) {
    const double w = std::exp(lw - lw_max);
    post.weights.push_back(w);
    total += w;
  }
  for (double& w : post.weights) w /= total;

  double pm = 0.0;
  for (std::size_t g = 0; g < post.weights.size(); ++g) {
    pm += post.weights[g] *
          0.5 * (post.interval_lefts[g] + post.interval_rights[g]);
  }
  post.posterior_mean = pm;

  // Piecewise-linear CDF within gaps (mass is uniform inside each gap).
  const auto quantile = [&](double q) {
    double cum = 0.0;
    for (std::size_t g = 0; g < post.weights.size(); ++g) {
      if (cum + post.weights[g] >= q) {
        const double frac =
            post.weights[g] > 0.0 ? (q - cum) / post.weights[g] : 0.0;
        return post.interval_lefts[g] +
               frac * (post.interval_rights[g] - post.interval_lefts[g]);
      }
      cum += post.weights[g];
    }
    return post.interval_rights.back();
  };
  post.credible_interval = {quantile(0.5 * (1.0 - level)),
                            quantile(0.5 * (1.0 + level))};
  return post;
}

double bayes_estimate(const BreakPosterior& post) {
  return post.posterior_mean;
}

MseCompareResult mse_compare(const TwoWindowScenario& scenario, int replicates,
                             std::uint64_t seed) {
  if (replicates < 100) {
    throw Error(Errc::bad_param, "mse_compare needs replicates >= 100");
  }
  const int n = scenario.n;
  std::vector<double> diff_sq(replicates);
  double sum_ml = 0.0, sum_bayes = 0.0;

  for (int r = 0; r < replicates; ++r) {
    Rng rng = Rng::substream(seed, {static_cast<std::uint64_t>(r)});
    std::vector<double> x(n), y(n);
    for (int i = 0; i < n; ++i) x[i] = rng.uniform();
    std::sort(x.begin(), x.end());
    for (int i = 0; i < n; ++i) {
      const double m = x[i] <= scenario.gamma0 ? scenario.a0 : scenario.b0;
      y[i] = m + scenario.sigma * rng.normal();
    }
    const Dataset data = make_dataset(std::move(x), std::move(y));

    const StepFit fit = dp_optimal(data, SegConfig{2, 2, false, {}}).fit;
    const double e_ml = n * (fit.breakpoints[0] - scenario.gamma0);
    const BreakPosterior post = posterior_gamma(data, 2);
    const double e_bayes = n * (post.posterior_mean - scenario.gamma0);

    sum_ml += e_ml * e_ml;
    sum_bayes += e_bayes * e_bayes;
    diff_sq[r] = e_ml * e_ml - e_bayes * e_bayes;
  }

  MseCompareResult out;
  out.replicates = replicates;
  out.mse_ml = sum_ml / replicates;
  out.mse_bayes = sum_bayes / replicates;
  double dmean = 0.0;
  for (double v : diff_sq) dmean += v;
  dmean /= replicates;
  double dvar = 0.0;
  for (double v : diff_sq) dvar += (v - dmean) * (v - dmean);
  dvar /= (replicates - 1);
  out.se_diff = std::sqrt(dvar / replicates);
  return out;
}

}  // namespace jumpreg
