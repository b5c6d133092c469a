#include <cmath>
#include <vector>

#include <doctest.h>

#include "jumpreg/dataset.hpp"
#include "jumpreg/errors.hpp"
#include "jumpreg/rng.hpp"
#include "jumpreg/step_fit.hpp"

using namespace jumpreg;

TEST_SUITE_BEGIN("step_core");

namespace {

Dataset random_dataset(int n, Rng& rng) {
  std::vector<double> x(n), y(n);
  for (int i = 0; i < n; ++i) {
    x[i] = rng.uniform();
    y[i] = rng.normal();
  }
  return make_dataset(std::move(x), std::move(y));
}

double sum_y2(const Dataset& data) {
  double s = 0.0;
  for (double v : data.y) s += v * v;
  return s;
}

}  // namespace

TEST_CASE("dataset rejects ties and mismatched lengths") {
  CHECK_THROWS_AS(make_dataset({0.1, 0.1, 0.3}, {1, 2, 3}), Error);
  try {
    make_dataset({0.1, 0.3, 0.1}, {1, 2, 3});
    FAIL("expected duplicate_x");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::duplicate_x);
    CHECK(std::string(e.what()).find("0.1") != std::string::npos);
  }
  CHECK_THROWS_AS(make_dataset({0.1, 0.2}, {1}), Error);
  CHECK_THROWS_AS(make_dataset({0.1}, {1}), Error);
}

TEST_CASE("dataset sorts by x") {
  const Dataset ds = make_dataset({0.3, 0.1, 0.2}, {3, 1, 2});
  CHECK(ds.x == std::vector<double>{0.1, 0.2, 0.3});
  CHECK(ds.y == std::vector<double>{1, 2, 3});
}

TEST_CASE("profile_fit on constant data has zero rss") {
  const Dataset ds = make_dataset({0.1, 0.2, 0.3, 0.4}, {3, 3, 3, 3});
  const std::vector<double> bp{0.25};
  const StepFit fit = profile_fit(ds, bp);
  CHECK(fit.levels == std::vector<double>{3, 3});
  CHECK(fit.rss == 0.0);
}

TEST_CASE("profile_fit recovers an exact two-step pattern") {
  const Dataset ds = make_dataset({0.1, 0.2, 0.3, 0.4}, {0, 0, 2, 2});
  const std::vector<double> bp{0.25};
  const StepFit fit = profile_fit(ds, bp);
  CHECK(fit.levels == std::vector<double>{0, 2});
  CHECK(fit.rss == 0.0);
  CHECK(fit.d() == 2);
}

TEST_CASE("profile_fit with no breakpoints is the grand mean") {
  const Dataset ds = make_dataset({0.1, 0.2, 0.3, 0.4}, {0, 1, 2, 3});
  const StepFit fit = profile_fit(ds, {});
  CHECK(fit.levels.size() == 1);
  CHECK(fit.levels[0] == doctest::Approx(1.5));
  CHECK(fit.rss == doctest::Approx(5.0));
  CHECK(fit.sigma0_hat == doctest::Approx(std::sqrt(5.0 / 4.0)));
  CHECK(fit.loglik_max ==
        doctest::Approx(-4.0 * std::log(fit.sigma0_hat) - 2.0));
}

TEST_CASE("profile_fit errors") {
  const Dataset ds = make_dataset({0.1, 0.2, 0.3, 0.4}, {0, 0, 2, 2});
  SUBCASE("empty window") {
    const std::vector<double> bp{0.22, 0.24};
    CHECK_THROWS_AS(profile_fit(ds, bp), Error);
  }
  SUBCASE("non-increasing") {
    const std::vector<double> bp{0.3, 0.2};
    CHECK_THROWS_AS(profile_fit(ds, bp), Error);
  }
  SUBCASE("outside range") {
    const std::vector<double> bp{0.5};
    CHECK_THROWS_AS(profile_fit(ds, bp), Error);
  }
}

TEST_CASE("weighted_level_score identities") {
  const Dataset ds = make_dataset({0.1, 0.2, 0.3, 0.4}, {0, 0, 2, 2});
  const std::vector<double> bp{0.25};
  CHECK(weighted_level_score(ds, bp) == doctest::Approx(8.0));
  CHECK(sum_y2(ds) == doctest::Approx(8.0));

  const Dataset flat = make_dataset({0.1, 0.2, 0.3}, {2, 2, 2});
  CHECK(weighted_level_score(flat, {}) == doctest::Approx(3 * 4.0));
}

TEST_CASE("sum y^2 = weighted score + rss on random data") {
  Rng rng(42);
  for (int trial = 0; trial < 20; ++trial) {
    const Dataset ds = random_dataset(15, rng);
    std::vector<double> bp{0.5 * (ds.x[4] + ds.x[5]),
                           0.5 * (ds.x[9] + ds.x[10])};
    const StepFit fit = profile_fit(ds, bp);
    const double score = weighted_level_score(ds, bp);
    CHECK(sum_y2(ds) ==
          doctest::Approx(score + fit.rss).epsilon(1e-10));
  }
}

TEST_CASE("per-window means minimise the SSE") {
  Rng rng(7);
  const Dataset ds = random_dataset(40, rng);
  const std::vector<double> bp{0.5 * (ds.x[12] + ds.x[13])};
  const StepFit fit = profile_fit(ds, bp);
  for (int trial = 0; trial < 25; ++trial) {
    double sse = 0.0;
    const double e0 = 0.2 * rng.normal();
    const double e1 = 0.2 * rng.normal();
    for (int i = 0; i < ds.n(); ++i) {
      const double level =
          (i <= 12 ? fit.levels[0] + e0 : fit.levels[1] + e1);
      sse += (ds.y[i] - level) * (ds.y[i] - level);
    }
    CHECK(fit.rss <= sse + 1e-12);
  }
}

TEST_CASE("refining a partition never increases rss") {
  Rng rng(11);
  const Dataset ds = random_dataset(60, rng);
  std::vector<double> coarse{0.5 * (ds.x[19] + ds.x[20])};
  std::vector<double> fine{0.5 * (ds.x[9] + ds.x[10]),
                           0.5 * (ds.x[19] + ds.x[20]),
                           0.5 * (ds.x[39] + ds.x[40])};
  CHECK(profile_fit(ds, fine).rss <= profile_fit(ds, coarse).rss + 1e-12);
  CHECK(profile_fit(ds, coarse).rss <= profile_fit(ds, {}).rss + 1e-12);
}

TEST_CASE("loglik_max decreases as rss grows at fixed n") {
  Rng rng(3);
  const Dataset ds = random_dataset(30, rng);
  const StepFit coarse = profile_fit(ds, {});
  const std::vector<double> bp{0.5 * (ds.x[14] + ds.x[15])};
  const StepFit fine = profile_fit(ds, bp);
  REQUIRE(fine.rss < coarse.rss);
  CHECK(fine.loglik_max > coarse.loglik_max);
}

TEST_CASE("predict uses half-open windows, boundary to the left") {
  const Dataset ds = make_dataset({0.1, 0.2, 0.3, 0.4}, {0, 0, 2, 2});
  const StepFit fit = profile_fit(ds, std::vector<double>{0.25});
  CHECK(predict(fit, 0.1) == 0.0);
  CHECK(predict(fit, 0.25) == 0.0);
  CHECK(predict(fit, 0.3) == 2.0);
  CHECK(predict(fit, -5.0) == 0.0);
  CHECK(predict(fit, 5.0) == 2.0);
}

TEST_CASE("breakpoints are gap midpoints and loglik is consistent") {
  Rng rng(19);
  const Dataset ds = random_dataset(25, rng);
  const std::vector<double> bp{0.5 * (ds.x[7] + ds.x[8])};
  const StepFit fit = profile_fit(ds, bp);
  CHECK(fit.breakpoints[0] == 0.5 * (ds.x[7] + ds.x[8]));
  CHECK(fit.split_index[0] == 8);
  CHECK(fit.loglik_max ==
        doctest::Approx(-25.0 * std::log(std::sqrt(fit.rss / 25.0)) - 12.5));
  // levels match recomputed window means
  double m = 0.0;
  for (int i = 0; i < 8; ++i) m += ds.y[i];
  CHECK(fit.levels[0] == doctest::Approx(m / 8.0).epsilon(1e-12));
}

TEST_SUITE_END();
