#include "jumpreg/dataset.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "jumpreg/errors.hpp"

namespace jumpreg {

Dataset make_dataset(std::vector<double> x, std::vector<double> y) {
  if (x.size() != y.size()) {
    throw Error(Errc::bad_param, "x and y must have the same length");
  }
  if (x.size() < 2) {
    throw Error(Errc::bad_param, "need at least two observations");
  }
  const int n = static_cast<int>(x.size());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return x[a] < x[b]; });

  Dataset ds;
  ds.x.reserve(n);
  ds.y.reserve(n);
  for (int i : order) {
    ds.x.push_back(x[i]);
    ds.y.push_back(y[i]);
  }
  for (int i = 1; i < n; ++i) {
    if (!(ds.x[i] > ds.x[i - 1])) {
      std::ostringstream msg;
      msg << "duplicate covariate value x = " << ds.x[i];
      throw Error(Errc::duplicate_x, msg.str());
    }
  }
  return ds;
}

}  // namespace jumpreg
