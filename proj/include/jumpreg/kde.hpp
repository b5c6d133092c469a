#pragma once

#include <span>

namespace jumpreg {

// Silverman's rule of thumb, 1.06 sd(x) n^{-1/5}.
double silverman_bandwidth(std::span<const double> x);

// Gaussian kernel density estimate at a point.
double gaussian_kde(std::span<const double> x, double at, double bandwidth);

}  // namespace jumpreg
