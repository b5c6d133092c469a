#include <algorithm>
#include <cmath>
#include <vector>

#include <doctest.h>

#include "jumpreg/errors.hpp"
#include "jumpreg/m_process.hpp"
#include "jumpreg/poisson_path.hpp"
#include "jumpreg/rng.hpp"

using namespace jumpreg;

TEST_SUITE_BEGIN("processes");

namespace {

struct Moments {
  double mean = 0.0, var = 0.0, se_var = 0.0;
  double p_zero = 0.0, kurt = 0.0, se_kurt = 0.0;
};

Moments w_star_moments(double lambda, double s, int reps,
                       std::uint64_t seed) {
  std::vector<double> w(reps);
  int zeros = 0;
  for (int r = 0; r < reps; ++r) {
    Rng rng = Rng::substream(seed, {static_cast<std::uint64_t>(r)});
    const CompoundPoissonPath path =
        simulate_path(lambda, std::abs(s) + 1e-9, rng);
    w[r] = path.mark_sum_at(s);
    if (w[r] == 0.0) ++zeros;
  }
  Moments m;
  for (double v : w) m.mean += v;
  m.mean /= reps;
  double s2 = 0.0, s4 = 0.0, s8 = 0.0;
  const double scale = std::sqrt(lambda * std::abs(s));
  for (double v : w) {
    const double c = v - m.mean;
    s2 += c * c;
    const double z4 = std::pow(v / scale, 4.0);
    s4 += z4;
    s8 += z4 * z4;
  }
  m.var = s2 / (reps - 1);
  m.kurt = s4 / reps;
  m.se_kurt = std::sqrt((s8 / reps - m.kurt * m.kurt) / reps);
  // SE of the sample variance from the fourth central moment.
  double mu4 = 0.0;
  for (double v : w) mu4 += std::pow(v - m.mean, 4.0);
  mu4 /= reps;
  m.se_var = std::sqrt((mu4 - m.var * m.var) / reps);
  m.p_zero = static_cast<double>(zeros) / reps;
  return m;
}

// Hand-built path for deterministic M-process checks.
CompoundPoissonPath manual_path(std::vector<double> pos_t,
                                std::vector<double> pos_m,
                                std::vector<double> neg_t,
                                std::vector<double> neg_m, double lambda,
                                double range) {
  CompoundPoissonPath p;
  p.lambda = lambda;
  p.range_s = range;
  p.pos_times = std::move(pos_t);
  p.pos_marks = std::move(pos_m);
  p.neg_times = std::move(neg_t);
  p.neg_marks = std::move(neg_m);
  p.pos_cum.assign(1, 0.0);
  for (double v : p.pos_marks) p.pos_cum.push_back(p.pos_cum.back() + v);
  p.neg_cum.assign(1, 0.0);
  for (double v : p.neg_marks) p.neg_cum.push_back(p.neg_cum.back() + v);
  return p;
}

}  // namespace

TEST_CASE("path evaluates to zero at the origin") {
  Rng rng(1);
  const CompoundPoissonPath path = simulate_path(1.0, 10.0, rng);
  CHECK(path.count_at(0.0) == 0);
  CHECK(path.mark_sum_at(0.0) == 0.0);
  CHECK_THROWS_AS(simulate_path(-1.0, 2.0, rng), Error);
  CHECK_THROWS_AS(simulate_path(1.0, 0.0, rng), Error);
}

TEST_CASE("W* variance, point mass and kurtosis match theory") {
  const Moments m = w_star_moments(1.0, 2.0, 100000, 2024);
  CHECK(std::abs(m.var - 2.0) <= 3.0 * m.se_var);
  const double p0 = std::exp(-2.0);
  CHECK(std::abs(m.p_zero - p0) <=
        3.0 * std::sqrt(p0 * (1.0 - p0) / 100000.0));
  CHECK(std::abs(m.kurt - (3.0 + 3.0 / 2.0)) <= 3.0 * m.se_kurt);
}

TEST_CASE("fourth standardized moment at (2,3)") {
  const Moments m = w_star_moments(2.0, 3.0, 100000, 99);
  CHECK(std::abs(m.kurt - (3.0 + 3.0 / 6.0)) <= 3.0 * m.se_kurt);
}

TEST_CASE("negative side mirrors the construction") {
  const Moments m = w_star_moments(1.0, -2.0, 50000, 7);
  CHECK(std::abs(m.var - 2.0) <= 3.0 * m.se_var);
}

TEST_CASE("path extension keeps the realisation consistent") {
  Rng rng_a = Rng::substream(5, {0});
  CompoundPoissonPath path = simulate_path(1.0, 5.0, rng_a);
  const std::vector<double> before = path.pos_times;
  extend_path(path, 10.0, rng_a);
  REQUIRE(path.pos_times.size() >= before.size());
  for (std::size_t i = 0; i < before.size(); ++i) {
    CHECK(path.pos_times[i] == before[i]);
  }
  CHECK(std::is_sorted(path.pos_times.begin(), path.pos_times.end()));
  CHECK(std::is_sorted(path.neg_times.begin(), path.neg_times.end()));
}

TEST_CASE("m_process with no jumps is identically zero") {
  CompoundPoissonPath path = manual_path({}, {}, {}, {}, 1.0, 4.0);
  const MParams p{0.5, 1.0, 1.0, 1.0, 1.0};
  const MProcess mp = m_process(path, p);
  CHECK(mp.pieces.size() == 1);
  CHECK(m_value(mp, 0.7) == 0.0);
  CHECK(m_value(mp, -3.0) == 0.0);
  const SargmaxResult s = sargmax_piece(mp);
  CHECK(s.boundary);
  CHECK_THROWS_AS(sargmax_m(mp), Error);
}

TEST_CASE("model-correct M equals the e0 form pointwise") {
  Rng rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    const double sigma = 0.4 + rng.uniform();
    const double a = rng.normal();
    const double b = a + 0.5 + rng.uniform();
    const double lambda = 0.5 + rng.uniform();
    const CompoundPoissonPath path = simulate_path(lambda, 8.0, rng);
    const MParams p = model_correct_params(sigma, a, b, lambda);
    const MProcess mp = m_process(path, p);
    const double e0 = 0.5 * std::abs(b - a) / sigma;
    for (double s : {-7.5, -2.0, -0.1, 0.0, 0.3, 1.7, 6.9}) {
      const double direct = sigma * std::abs(b - a) *
                            (path.mark_sum_at(s) - e0 * path.count_at(s));
      CHECK(m_value(mp, s) == doctest::Approx(direct).epsilon(1e-12));
    }
  }
}

TEST_CASE("m_process rejects a lambda mismatch") {
  Rng rng(13);
  const CompoundPoissonPath path = simulate_path(1.0, 4.0, rng);
  MParams p = model_correct_params(0.5, 2.0, 3.0, 2.0);
  CHECK_THROWS_AS(m_process(path, p), Error);
}

TEST_CASE("M drifts downward at rate half jump^2 lambda") {
  // Figure-2-style parameters (sigma0, a0, b0, lambda) = (0.5, 2, 3, 1):
  // E M(s)/|s| = -0.5 at every fixed s.
  const MParams p = model_correct_params(0.5, 2.0, 3.0, 1.0);
  const int reps = 20000;
  const double at = 30.0;
  double sum = 0.0, sum2 = 0.0;
  for (int r = 0; r < reps; ++r) {
    Rng rng = Rng::substream(77, {static_cast<std::uint64_t>(r)});
    const CompoundPoissonPath path = simulate_path(1.0, at, rng);
    const MProcess mp = m_process(path, p);
    const double v = 0.5 * (m_value(mp, at) / at + m_value(mp, -at) / at);
    sum += v;
    sum2 += v * v;
  }
  const double mean = sum / reps;
  const double se =
      std::sqrt((sum2 / reps - mean * mean) / reps);
  CHECK(std::abs(mean - (-0.5)) <= 3.0 * se);
}

TEST_CASE("sargmax of an everywhere-decreasing path sits at the zero piece") {
  CompoundPoissonPath path = manual_path(
      {0.8, 1.9, 3.0}, {-2.0, -1.5, -3.0}, {0.4, 2.5}, {-1.0, -2.2}, 1.0,
      4.0);
  const MParams p{1.0, 1.0, 1.0, 1.0, 1.0};
  const MProcess mp = m_process(path, p);
  const SargmaxResult s = sargmax_piece(mp);
  CHECK_FALSE(s.boundary);
  CHECK(s.s == -0.4);  // left end of the zero-containing interval
  CHECK(sargmax_m(mp) == -0.4);
}

TEST_CASE("large standardized jumps pin the argmax near zero") {
  const MParams p = model_correct_params(0.1, 0.0, 1.0, 1.0);  // e0 = 5
  int inside = 0;
  const int reps = 10000;
  for (int r = 0; r < reps; ++r) {
    Rng rng = Rng::substream(31, {static_cast<std::uint64_t>(r)});
    const CompoundPoissonPath path = simulate_path(1.0, 50.0, rng);
    const MProcess mp = m_process(path, p);
    const SargmaxResult s = sargmax_piece(mp);
    if (!s.boundary && s.piece == mp.zero_piece) ++inside;
  }
  CHECK(static_cast<double>(inside) / reps >= 0.99);
}

TEST_CASE("kappa_hat basics") {
  SUBCASE("zero jump gives exactly zero") {
    const MParams p{0.7, 0.0, 0.2, 0.2, 1.0};
    const KappaResult k = kappa_hat(p, 100, 4);
    CHECK(k.kappa == 0.0);
    CHECK(k.std_error == 0.0);
  }
  SUBCASE("selection bias keeps the mean nonnegative") {
    const MParams p = model_correct_params(0.5, 2.0, 3.0, 1.0);
    const KappaResult k = kappa_hat(p, 100000, 5);
    CHECK(k.kappa >= -3.0 * k.std_error);
    CHECK(k.kappa > 0.0);  // strictly positive in this regime
  }
  SUBCASE("same seed reproduces, independent seeds agree") {
    const MParams p = model_correct_params(0.5, 2.0, 3.0, 1.0);
    const KappaResult a = kappa_hat(p, 1000, 6);
    const KappaResult b = kappa_hat(p, 1000, 6);
    CHECK(a.kappa == b.kappa);
    CHECK(a.std_error == b.std_error);
    const KappaResult c = kappa_hat(p, 1000, 7);
    const double se = std::hypot(a.std_error, c.std_error);
    CHECK(std::abs(a.kappa - c.kappa) <= 4.0 * se);
  }
}

TEST_CASE("quantile_g properties") {
  SUBCASE("argument checks") {
    CHECK_THROWS_AS(quantile_g(1.0, 1.0, 0.4, 10, 1), Error);
    CHECK_THROWS_AS(quantile_g(1.0, 1.0, 1.0, 10, 1), Error);
    CHECK_THROWS_AS(quantile_g(0.0, 1.0, 0.9, 10, 1), Error);
  }
  SUBCASE("median of the maximising-piece midpoint is near zero") {
    const int reps = 100000;
    std::vector<double> s_hat(reps);
    const MParams p{1.0, 1.0, 2.0, 2.0, 1.0};  // e0 = 1
    for (int r = 0; r < reps; ++r) {
      Rng rng = Rng::substream(808, {static_cast<std::uint64_t>(r)});
      const CompoundPoissonPath path = simulate_path(1.0, 50.0, rng);
      const MProcess mp = m_process(path, p);
      s_hat[r] = sargmax_midpoint(mp);
    }
    std::nth_element(s_hat.begin(), s_hat.begin() + reps / 2, s_hat.end());
    const double median = s_hat[reps / 2];
    // Median SE approximated by 1.2533 sd/sqrt(n) with sd a few units.
    CHECK(std::abs(median) < 0.15);
  }
  SUBCASE("bigger standardized jumps tighten the quantile") {
    const double q_tight = quantile_g(2.0, 1.0, 0.975, 100000, 11);
    const double q_wide = quantile_g(0.5, 1.0, 0.975, 100000, 11);
    CHECK(q_tight < q_wide);
  }
  SUBCASE("Poisson time rescaling: s(e0, lambda) ~ s(e0, 1)/lambda") {
    const double q1 = quantile_g(1.0, 1.0, 0.975, 100000, 12);
    const double q2 = quantile_g(1.0, 2.0, 0.975, 100000, 13);
    CHECK(q2 == doctest::Approx(q1 / 2.0).epsilon(0.05));
  }
}

TEST_CASE("ci_breakpoint scaling and nesting") {
  StepFit fit;
  fit.breakpoints = {0.4};
  fit.levels = {2.0, 3.0};
  fit.split_index = {200};
  fit.n = 500;
  fit.sigma0_hat = 0.5;

  const Interval ci = ci_breakpoint(fit, 0, 0.95, 1.0, 0.5, 4000, 21);
  StepFit fit2 = fit;
  fit2.n = 1000;
  const Interval ci2 = ci_breakpoint(fit2, 0, 0.95, 1.0, 0.5, 4000, 21);
  CHECK(ci2.hi - ci2.lo == doctest::Approx((ci.hi - ci.lo) / 2.0));

  const Interval wide = ci_breakpoint(fit, 0, 0.99, 1.0, 0.5, 4000, 21);
  CHECK(wide.lo <= ci.lo);
  CHECK(wide.hi >= ci.hi);
  CHECK(wide.hi - wide.lo > ci.hi - ci.lo);

  CHECK_THROWS_AS(ci_breakpoint(fit, 0, 1.5, 1.0, 0.5, 100, 1), Error);
  CHECK_THROWS_AS(ci_breakpoint(fit, 1, 0.95, 1.0, 0.5, 100, 1), Error);
}

TEST_CASE("c_constants") {
  SUBCASE("model-correct case") {
    const CConstants c = c_constants(2.0, 5.0, 2.0, 5.0);
    CHECK(c.c1 == doctest::Approx(9.0));
    CHECK(c.c2 == doctest::Approx(9.0));
    CHECK(c.positive);
  }
  SUBCASE("direct arithmetic") {
    const CConstants c = c_constants(2.5, 5.0, 2.0, 5.0);
    CHECK(c.c1 == doctest::Approx(6.0));
  }
  SUBCASE("midway local mean hits the positivity boundary") {
    const CConstants c = c_constants(2.0, 3.5, 2.0, 5.0);
    CHECK(c.c2 == doctest::Approx(0.0));
    CHECK_FALSE(c.positive);
  }
}

TEST_CASE("bayes limit machinery") {
  SUBCASE("no jumps integrates to k = 0 exactly") {
    CompoundPoissonPath path = manual_path({}, {}, {}, {}, 1.0, 6.0);
    const MParams p{0.5, 1.0, 1.0, 1.0, 1.0};
    const MProcess mp = m_process(path, p);
    const MIntegrals ints = integrate_exp(mp);
    CHECK(ints.k() == 0.0);
    CHECK(ints.mass == doctest::Approx(12.0));
  }
  SUBCASE("reflecting a path negates k exactly") {
    const MParams p = model_correct_params(0.5, 2.0, 3.0, 1.0);
    for (int r = 0; r < 20; ++r) {
      Rng rng = Rng::substream(606, {static_cast<std::uint64_t>(r)});
      CompoundPoissonPath path = simulate_path(1.0, 60.0, rng);
      CompoundPoissonPath mirror = path;
      std::swap(mirror.pos_times, mirror.neg_times);
      std::swap(mirror.pos_marks, mirror.neg_marks);
      std::swap(mirror.pos_cum, mirror.neg_cum);
      const MIntegrals a = integrate_exp(m_process(path, p));
      const MIntegrals b = integrate_exp(m_process(mirror, p));
      CHECK(a.k() == -b.k());
      CHECK(a.mass == b.mass);
    }
  }
  SUBCASE("posterior-mean functional dominates the argmax in MSE") {
    const MParams p = model_correct_params(0.5, 2.0, 3.0, 1.0);
    const int reps = 100000;
    double k2 = 0.0, s2 = 0.0, d1 = 0.0, d2 = 0.0;
    for (int r = 0; r < reps; ++r) {
      Rng rng = Rng::substream(909, {static_cast<std::uint64_t>(r)});
      const BayesLimitDraw draw = bayes_limit_draw(p, rng);
      k2 += draw.k * draw.k;
      s2 += draw.s_hat * draw.s_hat;
      const double diff = draw.s_hat * draw.s_hat - draw.k * draw.k;
      d1 += diff;
      d2 += diff * diff;
    }
    k2 /= reps;
    s2 /= reps;
    const double dmean = d1 / reps;
    const double dse = std::sqrt((d2 / reps - dmean * dmean) / reps);
    CHECK(k2 < s2);
    CHECK(dmean >= 3.0 * dse);
  }
  SUBCASE("same seed gives identical draws") {
    const MParams p = model_correct_params(0.5, 2.0, 3.0, 1.0);
    CHECK(bayes_limit_k(p, 404) == bayes_limit_k(p, 404));
  }
}

TEST_SUITE_END();
