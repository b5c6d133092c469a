#pragma once

#include <cstdint>
#include <vector>

#include "jumpreg/rng.hpp"

namespace jumpreg {

// One realisation of the two-sided marked Poisson machinery on [-S, S]:
// N*(lambda, s) counts jumps between 0 and s, W*(lambda, s) sums the
// standard-normal marks of those jumps. Negative-side jump times are stored
// as |s|. Each side keeps the first arrival beyond S so the path can be
// extended without resampling what was already seen.
struct CompoundPoissonPath {
  double lambda = 0.0;
  double range_s = 0.0;
  std::vector<double> pos_times, neg_times;  // ascending in (0, S]
  std::vector<double> pos_marks, neg_marks;
  std::vector<double> pos_cum, neg_cum;      // mark prefix sums, [0] = 0
  double pending_pos_time = 0.0, pending_pos_mark = 0.0;
  double pending_neg_time = 0.0, pending_neg_mark = 0.0;

  int count_at(double s) const;       // N*(lambda, s)
  double mark_sum_at(double s) const; // W*(lambda, s)
};

CompoundPoissonPath simulate_path(double lambda, double range_s, Rng& rng);
CompoundPoissonPath simulate_path(double lambda, double range_s,
                                  std::uint64_t seed);

// Grows the truncation window of an existing realisation; arrivals beyond
// the old range continue the same Poisson process (memorylessness makes
// the stored overshoot the correct next arrival).
void extend_path(CompoundPoissonPath& path, double new_range_s, Rng& rng);

}  // namespace jumpreg
