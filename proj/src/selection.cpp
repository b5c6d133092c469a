#include "jumpreg/selection.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "jumpreg/errors.hpp"
#include "jumpreg/kde.hpp"
#include "jumpreg/rng.hpp"
#include "jumpreg/segmentation.hpp"

namespace jumpreg {

CriterionScore make_aic_family_score(const std::string& label,
                                     ModelFamily family, int d_or_degree,
                                     double loglik_max, double bias) {
  CriterionScore row;
  row.model_label = label;
  row.family = family;
  row.d_or_degree = d_or_degree;
  row.loglik_max = loglik_max;
  row.bias_or_penalty = bias;
  row.score = 2.0 * loglik_max - 2.0 * bias;
  return row;
}

CriterionScore make_bic_family_score(const std::string& label,
                                     ModelFamily family, int d_or_degree,
                                     double loglik_max, double penalty,
                                     double refinement) {
  CriterionScore row;
  row.model_label = label;
  row.family = family;
  row.d_or_degree = d_or_degree;
  row.loglik_max = loglik_max;
  row.bias_or_penalty = penalty;
  row.score = 2.0 * loglik_max - penalty + refinement;
  return row;
}

CriterionScore ajic_star(const StepFit& fit, double sigma_true,
                         std::span<const double> lambdas,
                         std::span<const CConstants> c_pairs, int reps,
                         std::uint64_t seed) {
  if (fit.sigma0_hat == 0.0) {
    throw Error(Errc::degenerate_sigma, "sigma0_hat is zero");
  }
  const int d = fit.d();
  if (static_cast<int>(lambdas.size()) != d - 1 ||
      static_cast<int>(c_pairs.size()) != d - 1) {
    throw Error(Errc::bad_param, "need one (lambda, c-pair) per break");
  }
  const double s02 = fit.sigma0_hat * fit.sigma0_hat;
  double kappa_sum = 0.0;
  std::map<std::string, double> extras;
  for (int j = 0; j < d - 1; ++j) {
    MParams p;
    p.sigma = sigma_true;
    p.jump_abs = std::abs(fit.levels[j + 1] - fit.levels[j]);
    p.c_pos = c_pairs[j].c2;
    p.c_neg = c_pairs[j].c1;
    p.lambda = lambdas[j];
    const KappaResult k = kappa_hat(
        p, reps, derive_seed(seed, {static_cast<std::uint64_t>(j)}));
    kappa_sum += k.kappa;
    extras["kappa_" + std::to_string(j + 1)] = k.kappa;
    extras["kappa_se_" + std::to_string(j + 1)] = k.std_error;
  }
  const double bias = 1.0 + d * (sigma_true * sigma_true) / s02 +
                      kappa_sum / s02;
  std::ostringstream label;
  label << "jump_d" << d;
  CriterionScore row = make_aic_family_score(label.str(), ModelFamily::jump,
                                             d, fit.loglik_max, bias);
  row.extras = std::move(extras);
  row.extras["sigma0"] = fit.sigma0_hat;
  row.extras["sigma_true"] = sigma_true;
  return row;
}

CriterionScore bjic(const StepFit& fit) {
  const int d = fit.d();
  const double penalty = (3.0 * d - 1.0) * std::log(fit.n);
  std::ostringstream label;
  label << "jump_d" << d;
  CriterionScore row = make_bic_family_score(label.str(), ModelFamily::jump,
                                             d, fit.loglik_max, penalty);
  row.extras["classical_penalty"] = 2.0 * d * std::log(fit.n);
  row.extras["sigma0"] = fit.sigma0_hat;
  return row;
}

MuEstimate estimate_mu(const MParams& p, int reps, std::uint64_t seed) {
  if (reps < 1) throw Error(Errc::bad_param, "reps must be >= 1");
  double sum = 0.0, sum2 = 0.0;
  for (int r = 0; r < reps; ++r) {
    Rng rng = Rng::substream(seed, {static_cast<std::uint64_t>(r)});
    const double mass = bayes_limit_draw(p, rng).mass;
    sum += mass;
    sum2 += mass * mass;
  }
  MuEstimate out;
  out.mu = sum / reps;
  if (reps > 1) {
    const double var = (sum2 - sum * sum / reps) / (reps - 1);
    out.std_error = std::sqrt(std::max(var, 0.0) / reps);
  }
  return out;
}

CriterionScore bjic_finetuned(const StepFit& fit, double tau,
                              std::span<const double> window_probs,
                              std::span<const double> mus) {
  const int d = fit.d();
  if (!(tau > 0.0)) throw Error(Errc::bad_prior, "tau must be positive");
  if (static_cast<int>(window_probs.size()) != d ||
      static_cast<int>(mus.size()) != d - 1) {
    throw Error(Errc::bad_param, "need d window probabilities and d-1 mus");
  }
  double prob_sum = 0.0;
  for (double f : window_probs) {
    if (!(f > 0.0)) throw Error(Errc::bad_prior, "window probability <= 0");
    prob_sum += f;
  }
  if (prob_sum > 1.0 + 1e-9) {
    throw Error(Errc::bad_prior, "window probabilities exceed one");
  }
  for (double mu : mus) {
    if (!(mu > 0.0)) throw Error(Errc::bad_param, "mu must be positive");
  }

  double r1 = 0.5 * (d + 1) * std::log(2.0 * M_PI) +
              (d + 1) * std::log(fit.sigma0_hat) - 0.5 * std::log(2.0);
  for (double f : window_probs) r1 -= 0.5 * std::log(f);
  for (double mu : mus) r1 += std::log(mu);
  const double r2 = std::lgamma(static_cast<double>(d)) - d * std::log(tau);

  const double penalty = (3.0 * d - 1.0) * std::log(fit.n);
  std::ostringstream label;
  label << "jump_d" << d;
  CriterionScore row =
      make_bic_family_score(label.str(), ModelFamily::jump, d,
                            fit.loglik_max, penalty, 2.0 * (r1 + r2));
  row.extras["r1"] = r1;
  row.extras["r2"] = r2;
  row.extras["sigma0"] = fit.sigma0_hat;
  for (std::size_t j = 0; j < mus.size(); ++j) {
    row.extras["mu_" + std::to_string(j + 1)] = mus[j];
  }
  return row;
}

CriterionScore aic_star_smooth(const PolyFit& fit, const RobustMatrices& mats,
                               double sigma_true) {
  if (fit.sigma0_hat == 0.0) {
    throw Error(Errc::degenerate_sigma, "sigma0_hat is zero");
  }
  const double ratio =
      (sigma_true * sigma_true) / (fit.sigma0_hat * fit.sigma0_hat);
  const double bias = 1.0 + ratio * mats.trace_term;
  std::ostringstream label;
  label << "poly_deg" << fit.degree;
  CriterionScore row = make_aic_family_score(
      label.str(), ModelFamily::polynomial, fit.degree, fit.loglik_max, bias);
  row.extras["aic_classical"] = 2.0 * fit.loglik_max - 2.0 * (1.0 + fit.p);
  row.extras["sigma0"] = fit.sigma0_hat;
  row.extras["sigma_true"] = sigma_true;
  row.extras["trace_term"] = mats.trace_term;
  return row;
}

CriterionScore bic_smooth(const PolyFit& fit) {
  const double penalty = (fit.p + 1.0) * std::log(fit.n);
  std::ostringstream label;
  label << "poly_deg" << fit.degree;
  CriterionScore row = make_bic_family_score(
      label.str(), ModelFamily::polynomial, fit.degree, fit.loglik_max,
      penalty);
  row.extras["sigma0"] = fit.sigma0_hat;
  return row;
}

namespace {

// Recompute sigma0/loglik after flooring a degenerate RSS so noiseless
// fixtures can still be ranked.
template <typename Fit>
Fit floored_copy(const Fit& fit, double rss_floor, bool* flagged) {
  Fit out = fit;
  if (out.rss < rss_floor) {
    out.rss = rss_floor;
    out.sigma0_hat = std::sqrt(out.rss / out.n);
    out.loglik_max = -out.n * std::log(out.sigma0_hat) - 0.5 * out.n;
    *flagged = true;
  }
  return out;
}

}  // namespace

SelectionReport select(const Dataset& data, int d_max, int degree_max,
                       CriterionKind criterion, const SelectConfig& cfg,
                       int reps, std::uint64_t seed) {
  const int n = data.n();
  if (d_max < 1 || degree_max < 0) {
    throw Error(Errc::bad_param, "d_max >= 1 and degree_max >= 0 required");
  }
  if (static_cast<long long>(d_max) * cfg.min_seg_len > n) {
    throw Error(Errc::infeasible, "d_max * min_seg_len exceeds n");
  }

  SelectionReport report;
  double sum_y2 = 0.0;
  for (double v : data.y) sum_y2 += v * v;
  const double rss_floor = 1e-12 * std::max(1.0, sum_y2);

  for (int d = 1; d <= d_max; ++d) {
    if (d == 1) {
      report.jump_fits.push_back(
          dp_optimal(data, SegConfig{1, cfg.min_seg_len, false, {}}).fit);
    } else {
      const GreedyInit init = greedy_init(data, d, cfg.min_seg_len);
      SegConfig sc{d, cfg.min_seg_len, true, init.rss};
      report.jump_fits.push_back(dp_pruned(data, sc).fit);
    }
  }
  for (int deg = 0; deg <= degree_max; ++deg) {
    report.poly_fits.push_back(fit_poly_allow_degenerate(data, deg));
  }

  // Scoring copies with floored RSS where degenerate.
  std::vector<StepFit> jump_scored;
  std::vector<PolyFit> poly_scored;
  for (const StepFit& fit : report.jump_fits) {
    bool flagged = false;
    jump_scored.push_back(floored_copy(fit, rss_floor, &flagged));
    if (flagged) {
      report.warnings.push_back("DegenerateSigma: rss floored for jump_d" +
                                std::to_string(fit.d()));
    }
  }
  for (const PolyFit& fit : report.poly_fits) {
    bool flagged = false;
    poly_scored.push_back(floored_copy(fit, rss_floor, &flagged));
    if (flagged) {
      report.warnings.push_back("DegenerateSigma: rss floored for poly_deg" +
                                std::to_string(fit.degree));
    }
  }

  for (std::size_t i = 1; i < jump_scored.size(); ++i) {
    if (jump_scored[i].loglik_max <
        jump_scored[i - 1].loglik_max - 1e-9 * std::abs(
            jump_scored[i - 1].loglik_max)) {
      report.warnings.push_back(
          "loglik_max decreased from d=" + std::to_string(i) +
          " to d=" + std::to_string(i + 1));
    }
  }

  std::vector<ModelFit> candidates;
  for (const StepFit& f : jump_scored) candidates.emplace_back(f);
  for (const PolyFit& f : poly_scored) candidates.emplace_back(f);
  report.sigma_true = sigma_true_hat(data, candidates);

  const bool aic_family =
      criterion == CriterionKind::ajic || criterion == CriterionKind::aic_star;

  const double x_range = data.x.back() - data.x.front();
  const double bandwidth =
      cfg.density == DensityMode::kernel ? silverman_bandwidth(data.x) : 0.0;
  const auto density_at = [&](double at) {
    if (cfg.density == DensityMode::uniform) return 1.0 / x_range;
    return gaussian_kde(data.x, at, bandwidth);
  };

  for (std::size_t i = 0; i < jump_scored.size(); ++i) {
    const StepFit& fit = jump_scored[i];
    const int d = fit.d();
    if (aic_family) {
      std::vector<double> lambdas;
      std::vector<CConstants> c_pairs;
      for (int j = 0; j < d - 1; ++j) {
        lambdas.push_back(density_at(fit.breakpoints[j]));
        const int split = fit.split_index[j];
        const int left_lo = (j == 0) ? 1 : fit.split_index[j - 1] + 1;
        const int right_hi = (j == d - 2) ? n : fit.split_index[j + 1];
        const int wl = std::min(cfg.local_mean_window, split - left_lo + 1);
        const int wr = std::min(cfg.local_mean_window, right_hi - split);
        double m_left = 0.0, m_right = 0.0;
        for (int k = split - wl; k < split; ++k) m_left += data.y[k];
        m_left /= wl;
        for (int k = split; k < split + wr; ++k) m_right += data.y[k];
        m_right /= wr;
        CConstants c =
            c_constants(m_left, m_right, fit.levels[j], fit.levels[j + 1]);
        const double jump = fit.levels[j + 1] - fit.levels[j];
        if (!(c.c1 > 0.0)) {
          c.c1 = jump * jump;
          report.warnings.push_back("c1 <= 0 at break " +
                                    std::to_string(j + 1) + " of jump_d" +
                                    std::to_string(d) +
                                    "; using model-correct value");
        }
        if (!(c.c2 > 0.0)) {
          c.c2 = jump * jump;
          report.warnings.push_back("c2 <= 0 at break " +
                                    std::to_string(j + 1) + " of jump_d" +
                                    std::to_string(d) +
                                    "; using model-correct value");
        }
        c_pairs.push_back(c);
      }
      report.scores.push_back(
          ajic_star(fit, report.sigma_true, lambdas, c_pairs, reps,
                    derive_seed(seed, {1, static_cast<std::uint64_t>(d)})));
    } else if (criterion == CriterionKind::bjic_fine) {
      std::vector<double> window_probs, mus;
      int lo = 1;
      for (int w = 0; w < d; ++w) {
        const int hi = (w == d - 1) ? n : fit.split_index[w];
        window_probs.push_back(static_cast<double>(hi - lo + 1) / n);
        lo = hi + 1;
      }
      for (int j = 0; j < d - 1; ++j) {
        const MParams p = model_correct_params(
            fit.sigma0_hat, fit.levels[j], fit.levels[j + 1],
            density_at(fit.breakpoints[j]));
        const MuEstimate mu = estimate_mu(
            p, reps,
            derive_seed(seed, {2, static_cast<std::uint64_t>(d),
                               static_cast<std::uint64_t>(j)}));
        mus.push_back(mu.mu);
      }
      report.scores.push_back(
          bjic_finetuned(fit, cfg.tau, window_probs, mus));
    } else {
      report.scores.push_back(bjic(fit));
    }
  }

  for (const PolyFit& fit : poly_scored) {
    if (aic_family) {
      const RobustMatrices mats = robust_matrices(fit, data);
      report.scores.push_back(aic_star_smooth(fit, mats, report.sigma_true));
    } else {
      report.scores.push_back(bic_smooth(fit));
    }
  }

  std::stable_sort(report.scores.begin(), report.scores.end(),
                   [](const CriterionScore& a, const CriterionScore& b) {
                     return a.score > b.score;
                   });
  return report;
}

}  // namespace jumpreg
