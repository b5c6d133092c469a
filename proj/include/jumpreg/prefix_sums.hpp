#pragma once

#include <span>
#include <vector>

namespace jumpreg {

// Prefix sums of y and y^2 so the SSE of any contiguous segment about its
// own mean is an O(1) lookup. Built with compensated summation.
struct PrefixSums {
  std::vector<double> cum_y;   // size n+1, cum_y[0] = 0
  std::vector<double> cum_y2;  // size n+1
  int n = 0;

  static PrefixSums from(std::span<const double> y);
};

// SSE of observations i..j (1-based, inclusive) about their mean,
// clamped at zero against roundoff.
double segment_cost(const PrefixSums& ps, int i, int j);

// Mean of observations i..j (1-based, inclusive).
double segment_mean(const PrefixSums& ps, int i, int j);

// Total SSE of the partition given by split indices (1-based index of the
// last observation of each window, strictly increasing). Windows are
// accumulated from the last one backwards; the dynamic program builds its
// candidate totals in exactly this order, so optima compare bit-for-bit.
double partition_cost(const PrefixSums& ps, std::span<const int> splits);

}  // namespace jumpreg
