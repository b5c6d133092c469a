#pragma once

#include <vector>

namespace jumpreg {

// Scatter data sorted by the covariate. x is strictly increasing; tied
// covariates are rejected at ingestion because all break-point inference
// here assumes a continuous design density.
struct Dataset {
  std::vector<double> x;
  std::vector<double> y;

  int n() const { return static_cast<int>(x.size()); }
};

// Sorts the pairs by x and validates (n >= 2, equal lengths, no ties).
Dataset make_dataset(std::vector<double> x, std::vector<double> y);

}  // namespace jumpreg
