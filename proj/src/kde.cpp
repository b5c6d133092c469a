#include "jumpreg/kde.hpp"

#include <cmath>

#include "jumpreg/errors.hpp"

namespace jumpreg {

double silverman_bandwidth(std::span<const double> x) {
  const int n = static_cast<int>(x.size());
  if (n < 2) throw Error(Errc::bad_param, "bandwidth needs n >= 2");
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= n;
  double ss = 0.0;
  for (double v : x) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / (n - 1));
  if (sd == 0.0) throw Error(Errc::bad_param, "x has zero spread");
  return 1.06 * sd * std::pow(static_cast<double>(n), -0.2);
}

double gaussian_kde(std::span<const double> x, double at, double bandwidth) {
  if (!(bandwidth > 0.0)) {
    throw Error(Errc::bad_param, "bandwidth must be positive");
  }
  const double inv = 1.0 / bandwidth;
  const double norm = 1.0 / std::sqrt(2.0 * M_PI);
  double sum = 0.0;
  for (double v : x) {
    const double z = (at - v) * inv;
    sum += norm * std::exp(-0.5 * z * z);
  }
  return sum * inv / static_cast<double>(x.size());
}

}  // namespace jumpreg
