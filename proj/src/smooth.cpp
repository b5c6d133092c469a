#include "jumpreg/smooth.hpp"

#include <algorithm>
#include <cmath>

#include "jumpreg/errors.hpp"

namespace jumpreg {

namespace {

// Householder QR least squares on a dense column-major n x p matrix.
// Returns the coefficient vector; throws rank_deficient when a diagonal
// of R collapses relative to the largest one.
std::vector<double> qr_least_squares(std::vector<std::vector<double>> cols,
                                     std::vector<double> rhs, int n, int p) {
  std::vector<double> diag(p, 0.0);
  for (int k = 0; k < p; ++k) {
    double norm = 0.0;
    for (int i = k; i < n; ++i) norm += cols[k][i] * cols[k][i];
    norm = std::sqrt(norm);
    if (cols[k][k] < 0.0) norm = -norm;
    diag[k] = -norm;
    if (norm != 0.0) {
      for (int i = k; i < n; ++i) cols[k][i] /= norm;
      cols[k][k] += 1.0;
    }
    // Apply the reflector to the remaining columns and the rhs.
    for (int j = k + 1; j < p; ++j) {
      double dot = 0.0;
      for (int i = k; i < n; ++i) dot += cols[k][i] * cols[j][i];
      if (cols[k][k] != 0.0) dot = -dot / cols[k][k];
      for (int i = k; i < n; ++i) cols[j][i] += dot * cols[k][i];
    }
    double dot = 0.0;
    for (int i = k; i < n; ++i) dot += cols[k][i] * rhs[i];
    if (cols[k][k] != 0.0) dot = -dot / cols[k][k];
    for (int i = k; i < n; ++i) rhs[i] += dot * cols[k][i];
  }

  double max_diag = 0.0;
  for (int k = 0; k < p; ++k) max_diag = std::max(max_diag, std::abs(diag[k]));
  for (int k = 0; k < p; ++k) {
    if (std::abs(diag[k]) <= 1e-10 * max_diag) {
      throw Error(Errc::rank_deficient, "design matrix numerically singular");
    }
  }

  std::vector<double> coef(p, 0.0);
  for (int k = p - 1; k >= 0; --k) {
    double v = rhs[k];
    for (int j = k + 1; j < p; ++j) v -= cols[j][k] * coef[j];
    coef[k] = v / diag[k];
  }
  return coef;
}

// Solve A X = B for square A (p x p, row-major) by Gaussian elimination
// with partial pivoting; returns X.
std::vector<double> solve_square(std::vector<double> a, std::vector<double> b,
                                 int p) {
  for (int k = 0; k < p; ++k) {
    int pivot = k;
    for (int i = k + 1; i < p; ++i) {
      if (std::abs(a[i * p + k]) > std::abs(a[pivot * p + k])) pivot = i;
    }
    if (a[pivot * p + k] == 0.0) {
      throw Error(Errc::rank_deficient, "singular matrix in trace solve");
    }
    if (pivot != k) {
      for (int j = 0; j < p; ++j) {
        std::swap(a[k * p + j], a[pivot * p + j]);
        std::swap(b[k * p + j], b[pivot * p + j]);
      }
    }
    for (int i = k + 1; i < p; ++i) {
      const double f = a[i * p + k] / a[k * p + k];
      for (int j = k; j < p; ++j) a[i * p + j] -= f * a[k * p + j];
      for (int j = 0; j < p; ++j) b[i * p + j] -= f * b[k * p + j];
    }
  }
  for (int k = p - 1; k >= 0; --k) {
    for (int j = 0; j < p; ++j) {
      double v = b[k * p + j];
      for (int i = k + 1; i < p; ++i) v -= a[k * p + i] * b[i * p + j];
      b[k * p + j] = v / a[k * p + k];
    }
  }
  return b;
}

RobustMatrices robust_impl(const PolyFit& fit, const Dataset& data,
                           const std::vector<double>& omega) {
  const int p = fit.p;
  const int n = data.n();
  RobustMatrices out;
  out.p = p;
  out.omega = omega;
  out.sigma.assign(p * p, 0.0);
  std::vector<double> basis(p);
  for (int i = 0; i < n; ++i) {
    basis[0] = 1.0;
    for (int k = 1; k < p; ++k) basis[k] = basis[k - 1] * data.x[i];
    for (int a = 0; a < p; ++a) {
      for (int b = 0; b < p; ++b) out.sigma[a * p + b] += basis[a] * basis[b];
    }
  }
  for (double& v : out.sigma) v /= n;

  const bool omega_zero =
      std::all_of(omega.begin(), omega.end(), [](double v) { return v == 0.0; });
  if (omega_zero) {
    // Tr{Sigma^{-1} Sigma} = p identically.
    out.trace_term = static_cast<double>(p);
    return out;
  }
  std::vector<double> lhs(p * p);
  for (int i = 0; i < p * p; ++i) lhs[i] = out.sigma[i] + omega[i];
  const std::vector<double> x = solve_square(lhs, out.sigma, p);
  double trace = 0.0;
  for (int k = 0; k < p; ++k) trace += x[k * p + k];
  out.trace_term = trace;
  return out;
}

}  // namespace

PolyFit fit_poly(const Dataset& data, int degree) {
  PolyFit fit = fit_poly_allow_degenerate(data, degree);
  if (fit.rss == 0.0) {
    throw Error(Errc::degenerate_sigma,
                "residuals are exactly zero; log sigma undefined");
  }
  return fit;
}

PolyFit fit_poly_allow_degenerate(const Dataset& data, int degree) {
  if (degree < 0 || degree > 5) {
    throw Error(Errc::bad_param, "supported degrees are 0..5");
  }
  const int n = data.n();
  const int p = degree + 1;
  if (n <= p) {
    throw Error(Errc::infeasible, "need n > degree + 1");
  }

  PolyFit fit;
  fit.degree = degree;
  fit.p = p;
  fit.n = n;

  double mean = 0.0;
  for (double v : data.x) mean += v;
  mean /= n;
  double spread = 0.0;
  for (double v : data.x) spread = std::max(spread, std::abs(v - mean));
  fit.center = mean;
  fit.scale = spread > 0.0 ? spread : 1.0;

  std::vector<std::vector<double>> cols(p, std::vector<double>(n));
  for (int i = 0; i < n; ++i) {
    const double z = (data.x[i] - fit.center) / fit.scale;
    double pw = 1.0;
    for (int k = 0; k < p; ++k) {
      cols[k][i] = pw;
      pw *= z;
    }
  }
  fit.scaled_coef = qr_least_squares(cols, data.y, n, p);

  double rss = 0.0;
  for (int i = 0; i < n; ++i) {
    const double r = data.y[i] - predict(fit, data.x[i]);
    rss += r * r;
  }
  fit.rss = rss;
  fit.sigma0_hat = std::sqrt(rss / n);
  fit.loglik_max = -n * std::log(fit.sigma0_hat) - 0.5 * n;

  // Expand sum_k c_k ((x - mu)/s)^k into raw monomial coefficients.
  fit.theta.assign(p, 0.0);
  std::vector<double> pow_poly{1.0};  // ((x - mu)/s)^k as raw coefficients
  for (int k = 0; k < p; ++k) {
    for (std::size_t j = 0; j < pow_poly.size(); ++j) {
      fit.theta[j] += fit.scaled_coef[k] * pow_poly[j];
    }
    std::vector<double> next(pow_poly.size() + 1, 0.0);
    for (std::size_t j = 0; j < pow_poly.size(); ++j) {
      next[j] += pow_poly[j] * (-fit.center / fit.scale);
      next[j + 1] += pow_poly[j] / fit.scale;
    }
    pow_poly = std::move(next);
  }
  return fit;
}

double predict(const PolyFit& fit, double x) {
  const double z = (x - fit.center) / fit.scale;
  double v = 0.0;
  for (int k = fit.p - 1; k >= 0; --k) v = v * z + fit.scaled_coef[k];
  return v;
}

RobustMatrices robust_matrices(const PolyFit& fit, const Dataset& data) {
  return robust_impl(fit, data, std::vector<double>(fit.p * fit.p, 0.0));
}

RobustMatrices robust_matrices_with_omega(const PolyFit& fit,
                                          const Dataset& data,
                                          std::span<const double> omega) {
  if (static_cast<int>(omega.size()) != fit.p * fit.p) {
    throw Error(Errc::bad_param, "omega must be p x p");
  }
  return robust_impl(fit, data, std::vector<double>(omega.begin(), omega.end()));
}

double sigma_true_hat(const Dataset& data,
                      const std::vector<ModelFit>& candidates,
                      SigmaTrueMethod method) {
  if (method == SigmaTrueMethod::smoother) {
    const int n = data.n();
    const int w = std::max(
        1, static_cast<int>(std::ceil(std::pow(n, 0.8) / 4.0)));
    const int half = w / 2;
    std::vector<double> cum(n + 1, 0.0);
    for (int i = 0; i < n; ++i) cum[i + 1] = cum[i] + data.y[i];
    double ss = 0.0;
    for (int i = 0; i < n; ++i) {
      const int lo = std::max(0, i - half);
      const int hi = std::min(n - 1, i + half);
      const double smooth = (cum[hi + 1] - cum[lo]) / (hi - lo + 1);
      ss += (data.y[i] - smooth) * (data.y[i] - smooth);
    }
    const double sigma = std::sqrt(ss / n);
    if (sigma == 0.0) {
      throw Error(Errc::degenerate_sigma, "smoother residuals are zero");
    }
    return sigma;
  }

  if (candidates.empty()) {
    throw Error(Errc::bad_param, "no candidate models");
  }
  int best_d = -1;
  double sigma = 0.0;
  bool found_jump = false;
  for (const ModelFit& c : candidates) {
    if (const StepFit* f = std::get_if<StepFit>(&c)) {
      if (f->d() > best_d || (f->d() == best_d && f->sigma0_hat < sigma)) {
        best_d = f->d();
        sigma = f->sigma0_hat;
        found_jump = true;
      }
    }
  }
  if (!found_jump) {
    int best_p = -1;
    for (const ModelFit& c : candidates) {
      if (const PolyFit* f = std::get_if<PolyFit>(&c)) {
        if (f->p > best_p || (f->p == best_p && f->sigma0_hat < sigma)) {
          best_p = f->p;
          sigma = f->sigma0_hat;
        }
      }
    }
    if (best_p < 0) throw Error(Errc::bad_param, "no candidate models");
  }
  if (sigma == 0.0) {
    throw Error(Errc::degenerate_sigma, "biggest model has zero sigma0");
  }
  return sigma;
}

}  // namespace jumpreg
