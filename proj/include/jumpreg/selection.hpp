#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "jumpreg/dataset.hpp"
#include "jumpreg/m_process.hpp"
#include "jumpreg/smooth.hpp"
#include "jumpreg/step_fit.hpp"

namespace jumpreg {

enum class ModelFamily { jump, polynomial };

// One row of a model-comparison table. AIC-family rows satisfy
// score = 2 loglik_max - 2 bias_or_penalty; BIC-family rows satisfy
// score = 2 loglik_max - bias_or_penalty (+ refinement when present).
struct CriterionScore {
  std::string model_label;
  ModelFamily family = ModelFamily::jump;
  int d_or_degree = 0;
  double loglik_max = 0.0;
  double bias_or_penalty = 0.0;
  double score = 0.0;
  std::map<std::string, double> extras;
};

CriterionScore make_aic_family_score(const std::string& label,
                                     ModelFamily family, int d_or_degree,
                                     double loglik_max, double bias);

CriterionScore make_bic_family_score(const std::string& label,
                                     ModelFamily family, int d_or_degree,
                                     double loglik_max, double penalty,
                                     double refinement = 0.0);

// AJIC* = 2 l_max - 2 (1 + d sigma^2/sigma0^2 + sigma0^{-2} sum kappa_j),
// the jump-model analogue of the model robust AIC. lambdas and c_pairs give
// the design density and misspecification constants at each break.
CriterionScore ajic_star(const StepFit& fit, double sigma_true,
                         std::span<const double> lambdas,
                         std::span<const CConstants> c_pairs, int reps,
                         std::uint64_t seed);

// BJIC_d = 2 l_max - (3d - 1) log n; the classical 2d log n penalty is
// recorded in the extras for comparison.
CriterionScore bjic(const StepFit& fit);

struct MuEstimate {
  double mu = 0.0;
  double std_error = 0.0;
};

// Monte Carlo estimate of mu_j = integral of exp(M_j / sigma0^2).
MuEstimate estimate_mu(const MParams& p, int reps, std::uint64_t seed);

// Fine-tuned BJIC = 2 l_max - (3d - 1) log n + 2 (r1_hat + r2), with the
// flat-Dirichlet break prior and uniform level priors of width tau; the
// log pi0(sigma_hat) term is omitted as common across models.
CriterionScore bjic_finetuned(const StepFit& fit, double tau,
                              std::span<const double> window_probs,
                              std::span<const double> mus);

// AIC* = 2 l_max - 2 (1 + (sigma^2/sigma0^2) Tr{(Sigma+Omega)^{-1} Sigma})
// for smooth candidates; classical AIC recorded in the extras.
CriterionScore aic_star_smooth(const PolyFit& fit, const RobustMatrices& mats,
                               double sigma_true);

// BIC = 2 l_max - (p + 1) log n.
CriterionScore bic_smooth(const PolyFit& fit);

enum class CriterionKind { ajic, bjic, bjic_fine, aic_star, bic };
enum class DensityMode { uniform, kernel };

struct SelectConfig {
  int min_seg_len = 2;
  DensityMode density = DensityMode::uniform;
  double tau = 1.0;            // prior width for the fine-tuned BJIC
  int local_mean_window = 5;   // observations per side for c estimation
};

struct SelectionReport {
  std::vector<CriterionScore> scores;  // sorted descending; front is winner
  std::vector<StepFit> jump_fits;      // d = 1..d_max
  std::vector<PolyFit> poly_fits;      // degree 0..degree_max
  double sigma_true = 0.0;
  std::vector<std::string> warnings;
};

// Fits jump models d = 1..d_max (pruned DP seeded by the fast initialiser)
// and polynomials degree 0..degree_max, scores every candidate on one scale
// (AJIC*/AIC* or BJIC/BIC), and ranks them.
SelectionReport select(const Dataset& data, int d_max, int degree_max,
                       CriterionKind criterion, const SelectConfig& cfg,
                       int reps, std::uint64_t seed);

}  // namespace jumpreg
