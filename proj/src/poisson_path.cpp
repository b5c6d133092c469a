#include "jumpreg/poisson_path.hpp"

#include <algorithm>
#include <cmath>

#include "jumpreg/errors.hpp"

namespace jumpreg {

namespace {

void fill_side(std::vector<double>& times, std::vector<double>& marks,
               std::vector<double>& cum, double& pending_time,
               double& pending_mark, double from, double to, double lambda,
               Rng& rng) {
  double t = from;
  double mark = pending_mark;
  if (pending_time > 0.0) {
    t = pending_time;
  } else {
    t += rng.exponential(lambda);
    mark = rng.normal();
  }
  while (t <= to) {
    times.push_back(t);
    marks.push_back(mark);
    cum.push_back(cum.back() + mark);
    t += rng.exponential(lambda);
    mark = rng.normal();
  }
  pending_time = t;
  pending_mark = mark;
}

}  // namespace

int CompoundPoissonPath::count_at(double s) const {
  if (s >= 0.0) {
    return static_cast<int>(
        std::upper_bound(pos_times.begin(), pos_times.end(), s) -
        pos_times.begin());
  }
  return static_cast<int>(
      std::upper_bound(neg_times.begin(), neg_times.end(), -s) -
      neg_times.begin());
}

double CompoundPoissonPath::mark_sum_at(double s) const {
  if (s >= 0.0) return pos_cum[count_at(s)];
  return neg_cum[count_at(s)];
}

CompoundPoissonPath simulate_path(double lambda, double range_s, Rng& rng) {
  if (!(lambda > 0.0) || !(range_s > 0.0)) {
    throw Error(Errc::bad_param, "lambda and range_s must be positive");
  }
  CompoundPoissonPath path;
  path.lambda = lambda;
  path.range_s = range_s;
  path.pos_cum.push_back(0.0);
  path.neg_cum.push_back(0.0);
  fill_side(path.pos_times, path.pos_marks, path.pos_cum,
            path.pending_pos_time, path.pending_pos_mark, 0.0, range_s,
            lambda, rng);
  fill_side(path.neg_times, path.neg_marks, path.neg_cum,
            path.pending_neg_time, path.pending_neg_mark, 0.0, range_s,
            lambda, rng);
  return path;
}

CompoundPoissonPath simulate_path(double lambda, double range_s,
                                  std::uint64_t seed) {
  Rng rng(seed);
  return simulate_path(lambda, range_s, rng);
}

void extend_path(CompoundPoissonPath& path, double new_range_s, Rng& rng) {
  if (!(new_range_s > path.range_s)) {
    throw Error(Errc::bad_param, "extension must enlarge the range");
  }
  fill_side(path.pos_times, path.pos_marks, path.pos_cum,
            path.pending_pos_time, path.pending_pos_mark, path.range_s,
            new_range_s, path.lambda, rng);
  fill_side(path.neg_times, path.neg_marks, path.neg_cum,
            path.pending_neg_time, path.pending_neg_mark, path.range_s,
            new_range_s, path.lambda, rng);
  path.range_s = new_range_s;
}

}  // namespace jumpreg
