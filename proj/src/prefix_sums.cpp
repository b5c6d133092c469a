#include "jumpreg/prefix_sums.hpp"

#include <cmath>

#include "jumpreg/errors.hpp"

namespace jumpreg {

namespace {

// Neumaier running sum; the stored prefix at each position folds the
// compensation in.
struct CompensatedSum {
  double sum = 0.0;
  double comp = 0.0;

  void add(double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      comp += (sum - t) + v;
    } else {
      comp += (v - t) + sum;
    }
    sum = t;
  }

  double value() const { return sum + comp; }
};

}  // namespace

PrefixSums PrefixSums::from(std::span<const double> y) {
  PrefixSums ps;
  ps.n = static_cast<int>(y.size());
  ps.cum_y.resize(ps.n + 1);
  ps.cum_y2.resize(ps.n + 1);
  ps.cum_y[0] = 0.0;
  ps.cum_y2[0] = 0.0;
  CompensatedSum s1, s2;
  for (int i = 0; i < ps.n; ++i) {
    s1.add(y[i]);
    s2.add(y[i] * y[i]);
    ps.cum_y[i + 1] = s1.value();
    ps.cum_y2[i + 1] = s2.value();
  }
  return ps;
}

double segment_cost(const PrefixSums& ps, int i, int j) {
  if (i > j) {
    throw Error(Errc::index_order, "segment_cost requires i <= j");
  }
  const double sum = ps.cum_y[j] - ps.cum_y[i - 1];
  const double sum2 = ps.cum_y2[j] - ps.cum_y2[i - 1];
  const double len = static_cast<double>(j - i + 1);
  const double sse = sum2 - sum * sum / len;
  return sse > 0.0 ? sse : 0.0;
}

double segment_mean(const PrefixSums& ps, int i, int j) {
  return (ps.cum_y[j] - ps.cum_y[i - 1]) / static_cast<double>(j - i + 1);
}

double partition_cost(const PrefixSums& ps, std::span<const int> splits) {
  double total = 0.0;
  int hi = ps.n;
  for (int w = static_cast<int>(splits.size()); w >= 0; --w) {
    const int lo = (w == 0) ? 1 : splits[w - 1] + 1;
    total = segment_cost(ps, lo, hi) + total;
    hi = lo - 1;
  }
  return total;
}

}  // namespace jumpreg
