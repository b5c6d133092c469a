#include "jumpreg/segmentation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "jumpreg/errors.hpp"

namespace jumpreg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_feasible(int n, const SegConfig& cfg) {
  if (cfg.d < 1 || cfg.min_seg_len < 1) {
    throw Error(Errc::bad_param, "d and min_seg_len must be positive");
  }
  if (static_cast<long long>(cfg.d) * cfg.min_seg_len > n) {
    throw Error(Errc::infeasible, "d * min_seg_len exceeds n");
  }
}

// Suffix dynamic program: S[j][k] is the minimal SSE of partitioning
// observations k..n into j windows. Costs accumulate as
// sse(first window) + (rest), matching partition_cost, so the reported
// fit RSS equals the DP optimum bit-for-bit.
DpResult run_dp(const Dataset& data, const SegConfig& cfg, double incumbent) {
  const int n = data.n();
  const int d = cfg.d;
  const int m = cfg.min_seg_len;
  check_feasible(n, cfg);

  const PrefixSums ps = PrefixSums::from(data.y);
  DpStats stats;

  if (d == 1) {
    ++stats.cost_evals;
    return {fit_from_splits(data, ps, {}), stats};
  }

  std::vector<double> prev(n + 2, kInf), cur(n + 2, kInf);
  // bp[j][k]: last observation of the first window when j windows cover k..n
  std::vector<std::vector<int>> bp(d + 1, std::vector<int>(n + 2, 0));

  for (int k = (d - 1) * m + 1; k <= n - m + 1; ++k) {
    ++stats.cost_evals;
    prev[k] = segment_cost(ps, k, n);
    if (prev[k] > incumbent) prev[k] = kInf;  // dead state
  }

  for (int j = 2; j <= d; ++j) {
    std::fill(cur.begin(), cur.end(), kInf);
    const int k_lo = (d - j) * m + 1;
    const int k_hi = n - j * m + 1;
    const int t_hi = n - (j - 1) * m;
    for (int k = k_lo; k <= k_hi; ++k) {
      double best = kInf;
      int best_t = 0;
      for (int t = k + m - 1; t <= t_hi; ++t) {
        if (prev[t + 1] == kInf) {
          ++stats.skipped_evals;
          continue;
        }
        ++stats.cost_evals;
        const double head = segment_cost(ps, k, t);
        if (head > incumbent) {
          // Segment SSE grows with length, so no later t can matter.
          stats.skipped_evals += static_cast<std::uint64_t>(t_hi - t);
          break;
        }
        const double cand = head + prev[t + 1];
        if (cand < best) {
          best = cand;
          best_t = t;
        }
      }
      if (best > incumbent) best = kInf;
      cur[k] = best;
      bp[j][k] = best_t;
    }
    std::swap(prev, cur);
  }

  if (prev[1] == kInf) {
    throw Error(Errc::bad_param,
                "incumbent_rss below the optimum: not an achievable RSS");
  }

  std::vector<int> splits;
  splits.reserve(d - 1);
  int k = 1;
  for (int j = d; j >= 2; --j) {
    const int t = bp[j][k];
    splits.push_back(t);
    k = t + 1;
  }
  return {fit_from_splits(data, ps, splits), stats};
}

}  // namespace

DpResult dp_optimal(const Dataset& data, const SegConfig& cfg) {
  return run_dp(data, cfg, kInf);
}

DpResult dp_pruned(const Dataset& data, const SegConfig& cfg) {
  const double incumbent =
      cfg.incumbent_rss.has_value() ? *cfg.incumbent_rss : kInf;
  return run_dp(data, cfg, incumbent);
}

GreedyInit greedy_init(const Dataset& data, int d, int min_seg_len) {
  if (d < 2) {
    throw Error(Errc::bad_param, "greedy_init requires d >= 2");
  }
  const int n = data.n();
  const int m = min_seg_len;
  if (static_cast<long long>(d) * m > n) {
    throw Error(Errc::infeasible, "d * min_seg_len exceeds n");
  }
  const PrefixSums ps = PrefixSums::from(data.y);
  GreedyInit out;

  // Best position for a single split of the window (lo..hi], others fixed.
  // Returns 0 when the window is too short to split.
  const auto best_split = [&](int lo, int hi, double* cost) -> int {
    int best_t = 0;
    double best = kInf;
    for (int t = lo + m - 1; t <= hi - m; ++t) {
      out.cost_evals += 2;
      const double c = segment_cost(ps, lo, t) + segment_cost(ps, t + 1, hi);
      if (c < best) {
        best = c;
        best_t = t;
      }
    }
    if (cost != nullptr) *cost = best;
    return best_t;
  };

  std::vector<int> chrono;  // splits in placement order
  chrono.reserve(d - 1);

  const auto sorted_neighbours = [&](int value) {
    // Window edges around `value` among the other current splits.
    int lo = 1, hi = n;
    for (int s : chrono) {
      if (s == value) continue;
      if (s < value && s + 1 > lo) lo = s + 1;
      if (s > value && s < hi) hi = s;
    }
    return std::pair<int, int>(lo, hi);
  };

  for (int placed = 0; placed < d - 1; ++placed) {
    // Step 1: scan every current window for the best additional split.
    std::vector<int> sorted(chrono);
    std::sort(sorted.begin(), sorted.end());
    int best_t = 0;
    double best_delta = kInf;
    int lo = 1;
    for (std::size_t w = 0; w <= sorted.size(); ++w) {
      const int hi = (w == sorted.size()) ? n : sorted[w];
      if (hi - lo + 1 >= 2 * m) {
        double split_cost = 0.0;
        const int t = best_split(lo, hi, &split_cost);
        ++out.cost_evals;
        const double delta = split_cost - segment_cost(ps, lo, hi);
        if (delta < best_delta) {
          best_delta = delta;
          best_t = t;
        }
      }
      lo = hi + 1;
    }
    if (best_t == 0) {
      // Tightly packed small samples can leave every window shorter than
      // 2 min_seg_len; fall back to the minimal feasible split vector,
      // which is still a valid incumbent.
      out.splits.resize(d - 1);
      for (int j = 0; j < d - 1; ++j) out.splits[j] = (j + 1) * m;
      out.rss = partition_cost(ps, out.splits);
      return out;
    }
    chrono.push_back(best_t);

    // Step 2: walk back through earlier splits, re-optimising each between
    // its current neighbours; keep backtracking while positions move.
    for (int c = static_cast<int>(chrono.size()) - 2; c >= 0; --c) {
      const auto [wlo, whi] = sorted_neighbours(chrono[c]);
      double moved_cost = 0.0;
      const int t = best_split(wlo, whi, &moved_cost);
      out.cost_evals += 2;
      const double stay_cost = segment_cost(ps, wlo, chrono[c]) +
                               segment_cost(ps, chrono[c] + 1, whi);
      if (t != 0 && t != chrono[c] && moved_cost < stay_cost) {
        chrono[c] = t;
      } else {
        break;
      }
    }
  }

  out.splits = chrono;
  std::sort(out.splits.begin(), out.splits.end());
  out.rss = partition_cost(ps, out.splits);
  return out;
}

StepFit brute_force(const Dataset& data, const SegConfig& cfg) {
  const int n = data.n();
  const int d = cfg.d;
  const int m = cfg.min_seg_len;
  check_feasible(n, cfg);

  double combos = 1.0;
  for (int i = 1; i <= d - 1; ++i) {
    combos *= static_cast<double>(n - i) / i;
  }
  if (combos > 1e7) {
    throw Error(Errc::too_large, "too many split placements to enumerate");
  }

  const PrefixSums ps = PrefixSums::from(data.y);
  if (d == 1) return fit_from_splits(data, ps, {});

  std::vector<int> splits(d - 1);
  for (int j = 0; j < d - 1; ++j) splits[j] = (j + 1) * m;

  std::vector<int> best_splits;
  double best = kInf;
  while (true) {
    const double total = partition_cost(ps, splits);
    if (total < best) {
      best = total;
      best_splits = splits;
    }
    // Advance the odometer in lexicographic order.
    int j = d - 2;
    while (j >= 0) {
      const int cap = (j == d - 2) ? n - m : splits[j + 1] - m;
      if (splits[j] < cap) break;
      --j;
    }
    if (j < 0) break;
    ++splits[j];
    for (int i = j + 1; i < d - 1; ++i) splits[i] = splits[i - 1] + m;
  }
  return fit_from_splits(data, ps, best_splits);
}

}  // namespace jumpreg
