#pragma once

#include <span>
#include <variant>
#include <vector>

#include "jumpreg/dataset.hpp"
#include "jumpreg/step_fit.hpp"

namespace jumpreg {

// Least squares polynomial fit. The basis is centred and scaled internally
// for conditioning; theta reports the coefficients in the raw monomial
// basis 1, x, ..., x^degree.
struct PolyFit {
  int degree = 0;
  int p = 1;  // parameter count, degree + 1
  std::vector<double> theta;
  double center = 0.0;
  double scale = 1.0;
  std::vector<double> scaled_coef;
  double rss = 0.0;
  double sigma0_hat = 0.0;
  double loglik_max = 0.0;
  int n = 0;
};

PolyFit fit_poly(const Dataset& data, int degree);

// Like fit_poly but leaves a zero-RSS fit to the caller instead of
// throwing; selection floors such fits rather than rejecting them.
PolyFit fit_poly_allow_degenerate(const Dataset& data, int degree);

double predict(const PolyFit& fit, double x);

// Sigma = n^{-1} sum b(x_i) b(x_i)^T over the raw monomial basis, Omega
// from the model's second derivatives (identically zero for linear-in-basis
// models), and the penalty trace Tr{(Sigma+Omega)^{-1} Sigma}.
struct RobustMatrices {
  int p = 0;
  std::vector<double> sigma;  // p*p, row-major
  std::vector<double> omega;
  double trace_term = 0.0;
};

RobustMatrices robust_matrices(const PolyFit& fit, const Dataset& data);

// Same with an externally supplied Omega in the raw basis (for nonlinear
// models scored through the same trace formula).
RobustMatrices robust_matrices_with_omega(const PolyFit& fit,
                                          const Dataset& data,
                                          std::span<const double> omega);

using ModelFit = std::variant<StepFit, PolyFit>;

enum class SigmaTrueMethod { biggest_model, smoother };

// Estimate of sigma_true feeding the AIC-family criteria: sigma0_hat from
// the largest candidate model, or the residual sd about a running-mean
// smoother with window ceil(n^{4/5}/4).
double sigma_true_hat(const Dataset& data,
                      const std::vector<ModelFit>& candidates,
                      SigmaTrueMethod method = SigmaTrueMethod::biggest_model);

}  // namespace jumpreg
