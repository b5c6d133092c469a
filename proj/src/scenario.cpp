#include "jumpreg/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "jumpreg/errors.hpp"
#include "jumpreg/m_process.hpp"
#include "jumpreg/segmentation.hpp"

namespace jumpreg {

ScenarioSpec ScenarioSpec::table2_fig2(int replicates) {
  ScenarioSpec spec;
  spec.kind = Kind::table2_fig2;
  spec.replicates = replicates;
  return spec;
}

ScenarioSpec ScenarioSpec::table1(int n_max, int replicates) {
  ScenarioSpec spec;
  spec.kind = Kind::table1;
  spec.n = n_max;
  spec.sigma = 1.0;
  spec.replicates = replicates;
  spec.breaks.clear();
  spec.levels.clear();
  return spec;
}

ScenarioSpec ScenarioSpec::two_window(int n, int replicates) {
  ScenarioSpec spec;
  spec.kind = Kind::two_window;
  spec.n = n;
  spec.breaks = {0.4};
  spec.levels = {2.0, 3.0};
  spec.sigma = 0.5;
  spec.replicates = replicates;
  return spec;
}

Dataset simulate_step_data(std::span<const double> breaks,
                           std::span<const double> levels, double sigma, int n,
                           Rng& rng) {
  if (levels.size() != breaks.size() + 1) {
    throw Error(Errc::bad_param, "levels length must be breaks length + 1");
  }
  std::vector<double> x(n), y(n);
  bool distinct = false;
  while (!distinct) {
    for (int i = 0; i < n; ++i) x[i] = rng.uniform();
    std::sort(x.begin(), x.end());
    distinct = std::adjacent_find(x.begin(), x.end()) == x.end();
  }
  for (int i = 0; i < n; ++i) {
    std::size_t w = 0;
    while (w < breaks.size() && x[i] > breaks[w]) ++w;
    y[i] = levels[w] + sigma * rng.normal();
  }
  return make_dataset(std::move(x), std::move(y));
}

namespace {

ScenarioReport run_table2(const ScenarioSpec& spec, std::uint64_t seed,
                          int mc_reps, bool keep_datasets) {
  ScenarioReport report;
  int winner_count = 0;
  int beats_count = 0;
  SelectConfig cfg;
  for (int r = 0; r < spec.replicates; ++r) {
    Rng rng = Rng::substream(seed, {static_cast<std::uint64_t>(r)});
    Dataset data =
        simulate_step_data(spec.breaks, spec.levels, spec.sigma, spec.n, rng);
    const SelectionReport sel =
        select(data, 4, 3, CriterionKind::ajic, cfg, mc_reps,
               derive_seed(seed, {static_cast<std::uint64_t>(r), 77}));

    std::vector<CriterionScore> rows;
    for (const CriterionScore& s : sel.scores) {
      if (s.family == ModelFamily::jump && s.d_or_degree < 2) continue;
      rows.push_back(s);
    }
    double poly_best = -std::numeric_limits<double>::infinity();
    double jump3 = -std::numeric_limits<double>::infinity();
    for (const CriterionScore& s : rows) {
      if (s.family == ModelFamily::polynomial) {
        poly_best = std::max(poly_best, s.score);
      } else if (s.d_or_degree == 4) {
        jump3 = s.score;
      }
    }
    if (jump3 > poly_best) ++beats_count;
    if (rows.front().family == ModelFamily::jump &&
        rows.front().d_or_degree == 4) {
      ++winner_count;
    }
    report.table2_rows.push_back(std::move(rows));
    if (keep_datasets) report.datasets.push_back(std::move(data));
  }
  report.frac_winner_three_breaks =
      static_cast<double>(winner_count) / spec.replicates;
  report.frac_three_breaks_beat_polys =
      static_cast<double>(beats_count) / spec.replicates;
  return report;
}

ScenarioReport run_table1(const ScenarioSpec& spec, std::uint64_t seed,
                          bool keep_datasets) {
  ScenarioReport report;
  double correct_breaks = 0.0;
  int correct_solution = 0;
  double eval_reduction = 0.0;
  double time_reduction = 0.0;
  using clock = std::chrono::steady_clock;

  for (int r = 0; r < spec.replicates; ++r) {
    Rng rng = Rng::substream(seed, {static_cast<std::uint64_t>(r)});
    const int n = rng.uniform_int(spec.n_min, spec.n);
    double limit = std::sqrt(static_cast<double>(n));
    if (spec.d_limit_half) limit *= 0.5;
    const int max_breaks = std::max(1, static_cast<int>(limit));
    const int n_breaks = rng.uniform_int(1, max_breaks);

    std::vector<double> breaks(n_breaks);
    for (double& b : breaks) b = rng.uniform();
    std::sort(breaks.begin(), breaks.end());
    std::vector<double> levels(n_breaks + 1);
    levels[0] = 0.0;
    for (int j = 1; j <= n_breaks; ++j) {
      levels[j] = levels[j - 1] + 1.5 * rng.normal();
    }
    Dataset data = simulate_step_data(breaks, levels, spec.sigma, n, rng);

    const SegConfig full_cfg{n_breaks + 1, 2, false, {}};
    const auto t0 = clock::now();
    const DpResult full = dp_optimal(data, full_cfg);
    const auto t1 = clock::now();
    const GreedyInit init = greedy_init(data, n_breaks + 1, 2);
    SegConfig pruned_cfg{n_breaks + 1, 2, true, init.rss};
    const DpResult pruned = dp_pruned(data, pruned_cfg);
    const auto t2 = clock::now();

    if (init.rss < full.fit.rss) report.init_never_below_optimum = false;
    if (pruned.fit.split_index != full.fit.split_index ||
        pruned.fit.rss != full.fit.rss) {
      report.pruned_always_identical = false;
    }
    if (init.splits == full.fit.split_index) ++correct_solution;
    int shared = 0;
    for (int s : init.splits) {
      if (std::binary_search(full.fit.split_index.begin(),
                             full.fit.split_index.end(), s)) {
        ++shared;
      }
    }
    correct_breaks += static_cast<double>(shared) / n_breaks;
    eval_reduction +=
        1.0 - static_cast<double>(pruned.stats.cost_evals) /
                  static_cast<double>(full.stats.cost_evals);
    const double full_time =
        std::chrono::duration<double>(t1 - t0).count();
    const double seeded_time =
        std::chrono::duration<double>(t2 - t1).count();
    if (full_time > 0.0) {
      time_reduction += 1.0 - seeded_time / full_time;
    }
    if (keep_datasets) report.datasets.push_back(std::move(data));
  }
  report.pct_correct_breaks = 100.0 * correct_breaks / spec.replicates;
  report.pct_correct_solution =
      100.0 * static_cast<double>(correct_solution) / spec.replicates;
  report.mean_eval_reduction = eval_reduction / spec.replicates;
  report.mean_time_reduction = time_reduction / spec.replicates;
  return report;
}

ScenarioReport run_two_window(const ScenarioSpec& spec, std::uint64_t seed,
                              bool keep_datasets) {
  if (spec.breaks.size() != 1 || spec.levels.size() != 2) {
    throw Error(Errc::bad_param,
                "two-window scenario needs one break and two levels");
  }
  ScenarioReport report;
  const double gamma0 = spec.breaks[0];
  int covered = 0;
  for (int r = 0; r < spec.replicates; ++r) {
    Rng rng = Rng::substream(seed, {static_cast<std::uint64_t>(r)});
    Dataset data =
        simulate_step_data(spec.breaks, spec.levels, spec.sigma, spec.n, rng);
    const StepFit fit = dp_optimal(data, SegConfig{2, 2, false, {}}).fit;
    const double lambda = 1.0 / (data.x.back() - data.x.front());
    const Interval ci = ci_breakpoint(
        fit, 0, spec.level, lambda, fit.sigma0_hat, spec.ci_reps,
        derive_seed(seed, {static_cast<std::uint64_t>(r), 11}));
    if (gamma0 >= ci.lo && gamma0 <= ci.hi) ++covered;
    if (keep_datasets) report.datasets.push_back(std::move(data));
  }
  report.coverage = static_cast<double>(covered) / spec.replicates;
  report.coverage_se = std::sqrt(report.coverage * (1.0 - report.coverage) /
                                 spec.replicates);
  TwoWindowScenario mse_spec;
  mse_spec.a0 = spec.levels[0];
  mse_spec.b0 = spec.levels[1];
  mse_spec.gamma0 = gamma0;
  mse_spec.sigma = spec.sigma;
  mse_spec.n = spec.n;
  report.mse =
      mse_compare(mse_spec, std::max(100, spec.replicates),
                  derive_seed(seed, {99}));
  return report;
}

}  // namespace

ScenarioReport run_scenario(const ScenarioSpec& spec, std::uint64_t seed,
                            int mc_reps, bool keep_datasets) {
  if (spec.replicates < 1) {
    throw Error(Errc::bad_param, "replicates must be >= 1");
  }
  switch (spec.kind) {
    case ScenarioSpec::Kind::table2_fig2:
      return run_table2(spec, seed, mc_reps, keep_datasets);
    case ScenarioSpec::Kind::table1:
      return run_table1(spec, seed, keep_datasets);
    case ScenarioSpec::Kind::two_window:
      return run_two_window(spec, seed, keep_datasets);
  }
  throw Error(Errc::bad_param, "unknown scenario");
}

}  // namespace jumpreg
