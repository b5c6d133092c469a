#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "jumpreg/bayes.hpp"
#include "jumpreg/dataset.hpp"
#include "jumpreg/rng.hpp"
#include "jumpreg/selection.hpp"

namespace jumpreg {

// Built-in simulation scenarios: a model-comparison table on step-function
// truth, a grid study of the fast initialiser against the full DP, and a
// two-window study of break-point interval coverage and ML-vs-Bayes MSE.
struct ScenarioSpec {
  enum class Kind { table1, table2_fig2, two_window };
  Kind kind = Kind::table2_fig2;
  int n = 1000;
  std::vector<double> breaks{0.234, 0.50, 0.73};
  std::vector<double> levels{1.0, 3.1, 2.8, 1.5};
  double sigma = 0.5;
  int replicates = 1;
  // table1 grid: n uniform in [n_min, n], breaks uniform in
  // [1, sqrt(n)] or [1, sqrt(n)/2], jump sizes N(0, 1.5^2)
  int n_min = 20;
  bool d_limit_half = false;
  // two-window extras
  double level = 0.95;
  int ci_reps = 2000;

  static ScenarioSpec table2_fig2(int replicates = 1);
  static ScenarioSpec table1(int n_max = 2000, int replicates = 100);
  static ScenarioSpec two_window(int n = 500, int replicates = 500);
};

struct ScenarioReport {
  // table2_fig2: ranked Table-2-shaped rows per replicate (jump models with
  // at least one break plus all polynomial competitors)
  std::vector<std::vector<CriterionScore>> table2_rows;
  double frac_winner_three_breaks = 0.0;
  double frac_three_breaks_beat_polys = 0.0;
  // table1
  double pct_correct_breaks = 0.0;
  double pct_correct_solution = 0.0;
  double mean_eval_reduction = 0.0;
  double mean_time_reduction = 0.0;
  bool init_never_below_optimum = true;
  bool pruned_always_identical = true;
  // two_window
  double coverage = 0.0;
  double coverage_se = 0.0;
  MseCompareResult mse;
  std::vector<Dataset> datasets;  // kept only on request
};

// Uniform-design step-function data with Gaussian noise.
Dataset simulate_step_data(std::span<const double> breaks,
                           std::span<const double> levels, double sigma, int n,
                           Rng& rng);

ScenarioReport run_scenario(const ScenarioSpec& spec, std::uint64_t seed,
                            int mc_reps = 500, bool keep_datasets = false);

}  // namespace jumpreg
