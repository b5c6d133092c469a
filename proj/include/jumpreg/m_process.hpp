#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "jumpreg/poisson_path.hpp"
#include "jumpreg/step_fit.hpp"

namespace jumpreg {

// Parameters of the localised limit criterion
//   M(s) = sigma * jump_abs * W*(lambda, s) - (1/2) c(s) N*(lambda, s),
// with c(s) = c_pos for s >= 0 and c_neg for s < 0. Under a correctly
// specified step model both constants equal jump_abs^2.
struct MParams {
  double sigma = 1.0;     // residual standard deviation (sigma_true)
  double jump_abs = 0.0;  // |a_{j+1} - a_j|
  double c_pos = 0.0;     // applied for s >= 0
  double c_neg = 0.0;     // applied for s < 0
  double lambda = 1.0;    // design density at the break
};

inline MParams model_correct_params(double sigma, double level_left,
                                    double level_right, double lambda) {
  const double jump = level_right - level_left;
  return MParams{sigma, std::abs(jump), jump * jump, jump * jump, lambda};
}

// One constant piece of the step function M. Pieces partition [-S, S] from
// left to right; `left` is the sargmax representative of the piece.
struct MPiece {
  double left = 0.0;
  double right = 0.0;
  int n_jumps = 0;     // N* on the piece
  double w_sum = 0.0;  // W* on the piece
  double value = 0.0;  // M on the piece
};

struct MProcess {
  double lambda = 0.0;
  double range_s = 0.0;
  double sigma = 1.0;
  double c_pos = 0.0;
  double c_neg = 0.0;
  std::vector<MPiece> pieces;
  int zero_piece = 0;  // index of the piece containing s = 0
};

MProcess m_process(const CompoundPoissonPath& path, const MParams& p);

// Point evaluation (jumps included via N*(lambda, s), i.e. closed at the
// jump location on both sides of zero).
double m_value(const MProcess& mp, double s);

struct SargmaxResult {
  double s = 0.0;
  int piece = 0;
  bool boundary = false;  // max attained at (or tied with) the range edge
};

// Smallest maximiser of the step function: the left end of the first piece
// attaining the maximum. `boundary` signals that range_s was too small.
SargmaxResult sargmax_piece(const MProcess& mp);
double sargmax_m(const MProcess& mp);  // throws Errc::boundary_max

// Midpoint of the maximising piece: the limit analogue of reporting the
// midpoint of the minimising inter-observation gap. Unlike the left
// endpoint this functional is symmetric under path reflection, which is
// what the two-sided quantiles assume.
double sargmax_midpoint(const MProcess& mp);  // throws Errc::boundary_max

struct CConstants {
  double c1 = 0.0;  // applies for s < 0
  double c2 = 0.0;  // applies for s >= 0
  bool positive = true;
};

// Misspecification constants from local means on either side of a break;
// non-positive values signal the candidate break is not a genuine jump.
CConstants c_constants(double local_mean_left, double local_mean_right,
                       double a_left, double a_right);

struct KappaResult {
  double kappa = 0.0;
  double std_error = 0.0;
};

// Monte Carlo estimate of kappa = sigma * jump_abs * E W*(lambda, s_hat),
// the optimism contributed by estimating one break point. The truncation
// range adapts (doubling up to four times) until the maximiser is interior.
KappaResult kappa_hat(const MParams& p, int reps, std::uint64_t seed);

// Empirical `prob`-quantile of the symmetrised sargmax of
// W*(lambda, s) - e0 N*(lambda, s); e0 = (1/2)|b-a|/sigma puts the
// criterion on the same scale as M up to a positive factor.
double quantile_g(double e0, double lambda, double prob, int reps,
                  std::uint64_t seed);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

// Confidence interval gamma_hat +- q((1+level)/2)/n for a fitted break
// point; break_index is 0-based among the fit's breaks.
Interval ci_breakpoint(const StepFit& fit, int break_index, double level,
                       double density_at, double sigma_hat, int reps,
                       std::uint64_t seed);

// Integrals of exp(M/sigma^2), accumulated outward from zero on each side
// so that mirrored paths yield exactly mirrored results.
struct MIntegrals {
  double mass = 0.0;      // integral of exp((M - max)/sigma^2)
  double first = 0.0;     // integral of s exp((M - max)/sigma^2)
  double tail_bound = 0.0;  // drift-based bound on the mass beyond +-S
  double k() const { return first / mass; }
};

MIntegrals integrate_exp(const MProcess& mp);

struct BayesLimitDraw {
  double k = 0.0;      // posterior-mean functional of the limit experiment
  double s_hat = 0.0;  // maximising-piece midpoint of the same path
  double mass = 0.0;   // integral of exp(M/sigma^2) (mu_j building block)
};

BayesLimitDraw bayes_limit_draw(const MParams& p, Rng& rng);
double bayes_limit_k(const MParams& p, std::uint64_t seed);

}  // namespace jumpreg
