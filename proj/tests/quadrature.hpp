// Test-only oracle: brute-force numerical integration of the full
// four-parameter posterior (levels a and b, log sigma, break gamma) of the
// two-window model, used to validate the closed-form marginal weights.
#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "jumpreg/dataset.hpp"

namespace oracle {

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration.
inline std::pair<std::vector<double>, std::vector<double>> gauss_legendre(
    int n) {
  std::vector<double> nodes(n), weights(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    weights[i] = 2.0 / ((1.0 - x * x) * pp * pp);
    weights[n - 1 - i] = weights[i];
  }
  return {nodes, weights};
}

// Normalized posterior weight per inter-observation gap by tensor-product
// quadrature over (a, b, t = log sigma). The flat priors match the closed
// form being tested; all segment statistics are recomputed with plain
// two-pass loops.
inline std::vector<double> posterior_weights(const jumpreg::Dataset& data,
                                             int min_seg_len) {
  const int n = data.n();
  const auto [t_nodes, t_w] = gauss_legendre(96);
  const auto [ab_nodes, ab_w] = gauss_legendre(48);

  std::vector<double> log_mass;
  for (int k = min_seg_len; k <= n - min_seg_len; ++k) {
    double mean_l = 0.0, mean_r = 0.0;
    for (int i = 0; i < k; ++i) mean_l += data.y[i];
    mean_l /= k;
    for (int i = k; i < n; ++i) mean_r += data.y[i];
    mean_r /= (n - k);
    double sse_l = 0.0, sse_r = 0.0;
    for (int i = 0; i < k; ++i) {
      sse_l += (data.y[i] - mean_l) * (data.y[i] - mean_l);
    }
    for (int i = k; i < n; ++i) {
      sse_r += (data.y[i] - mean_r) * (data.y[i] - mean_r);
    }
    const double rss = sse_l + sse_r;

    const double t_mid = 0.5 * std::log(rss / (n - 2));
    const double t_lo = t_mid - 6.0, t_hi = t_mid + 5.0;
    const double shift = -n * t_mid - 0.5 * (n - 2);  // exponent near peak

    double total = 0.0;
    for (int it = 0; it < 96; ++it) {
      const double t = 0.5 * (t_hi + t_lo) + 0.5 * (t_hi - t_lo) * t_nodes[it];
      const double wt = 0.5 * (t_hi - t_lo) * t_w[it];
      const double sigma = std::exp(t);
      const double inv2 = 1.0 / (2.0 * sigma * sigma);
      const double ha = 12.0 * sigma / std::sqrt(static_cast<double>(k));
      const double hb = 12.0 * sigma / std::sqrt(static_cast<double>(n - k));
      double inner = 0.0;
      for (int ia = 0; ia < 48; ++ia) {
        const double a = mean_l + ha * ab_nodes[ia];
        const double wa = ha * ab_w[ia];
        const double qa = k * (a - mean_l) * (a - mean_l) + sse_l;
        for (int ib = 0; ib < 48; ++ib) {
          const double b = mean_r + hb * ab_nodes[ib];
          const double wb = hb * ab_w[ib];
          const double q =
              qa + (n - k) * (b - mean_r) * (b - mean_r) + sse_r;
          inner += wa * wb * std::exp(-n * t - q * inv2 - shift);
        }
      }
      total += wt * inner;
    }
    const double gap = data.x[k] - data.x[k - 1];
    log_mass.push_back(std::log(gap) + std::log(total) + shift);
  }

  double lw_max = log_mass[0];
  for (double lw : log_mass) lw_max = std::max(lw_max, lw);
  double total = 0.0;
  std::vector<double> weights;
  for (double lw : log_mass) {
    weights.push_back(std::exp(lw - lw_max));
    total += weights.back();
  }
  for (double& w : weights) w /= total;
  return weights;
}

}  // namespace oracle
