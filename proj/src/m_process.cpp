#include "jumpreg/m_process.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "jumpreg/errors.hpp"

namespace jumpreg {

namespace {

constexpr double kStartRangeOverLambda = 50.0;
constexpr int kMaxDoublings = 4;
constexpr double kTailTolerance = 1e-6;

}  // namespace

MProcess m_process(const CompoundPoissonPath& path, const MParams& p) {
  if (path.lambda != p.lambda) {
    throw Error(Errc::mismatch, "path and params disagree on lambda");
  }
  MProcess mp;
  mp.lambda = p.lambda;
  mp.range_s = path.range_s;
  mp.sigma = p.sigma;
  mp.c_pos = p.c_pos;
  mp.c_neg = p.c_neg;

  const double scale = p.sigma * p.jump_abs;
  const int kn = static_cast<int>(path.neg_times.size());
  const int kp = static_cast<int>(path.pos_times.size());
  mp.pieces.reserve(kn + kp + 1);

  // Negative side, outermost piece first. Piece with k jumps lives on
  // (-t_{k+1}, -t_k]; the jump at -t_k is included in its own piece.
  for (int k = kn; k >= 1; --k) {
    MPiece piece;
    piece.left = (k == kn) ? -path.range_s : -path.neg_times[k];
    piece.right = -path.neg_times[k - 1];
    piece.n_jumps = k;
    piece.w_sum = path.neg_cum[k];
    piece.value = scale * piece.w_sum - 0.5 * p.c_neg * k;
    mp.pieces.push_back(piece);
  }

  // Piece containing zero, where M = 0 by construction.
  {
    MPiece piece;
    piece.left = path.neg_times.empty() ? -path.range_s : -path.neg_times[0];
    piece.right = path.pos_times.empty() ? path.range_s : path.pos_times[0];
    mp.pieces.push_back(piece);
    mp.zero_piece = static_cast<int>(mp.pieces.size()) - 1;
  }

  // Positive side: piece with k jumps lives on [t_k, t_{k+1}).
  for (int k = 1; k <= kp; ++k) {
    MPiece piece;
    piece.left = path.pos_times[k - 1];
    piece.right = (k == kp) ? path.range_s : path.pos_times[k];
    piece.n_jumps = k;
    piece.w_sum = path.pos_cum[k];
    piece.value = scale * piece.w_sum - 0.5 * p.c_pos * k;
    mp.pieces.push_back(piece);
  }
  return mp;
}

double m_value(const MProcess& mp, double s) {
  if (s >= 0.0) {
    for (int i = mp.zero_piece; i < static_cast<int>(mp.pieces.size()); ++i) {
      if (s < mp.pieces[i].right || i + 1 == static_cast<int>(mp.pieces.size()))
        return mp.pieces[i].value;
    }
  }
  for (int i = mp.zero_piece; i >= 0; --i) {
    if (s > mp.pieces[i].left || i == 0) return mp.pieces[i].value;
  }
  return 0.0;
}

SargmaxResult sargmax_piece(const MProcess& mp) {
  const int count = static_cast<int>(mp.pieces.size());
  int best = 0;
  for (int i = 1; i < count; ++i) {
    if (mp.pieces[i].value > mp.pieces[best].value) best = i;
  }
  SargmaxResult res;
  res.piece = best;
  res.s = mp.pieces[best].left;
  const double max_val = mp.pieces[best].value;
  res.boundary = best == 0 || best == count - 1 ||
                 !(max_val > mp.pieces.front().value) ||
                 !(max_val > mp.pieces.back().value);
  return res;
}

double sargmax_m(const MProcess& mp) {
  const SargmaxResult res = sargmax_piece(mp);
  if (res.boundary) {
    throw Error(Errc::boundary_max,
                "maximum of M at the truncation edge; enlarge range_s");
  }
  return res.s;
}

double sargmax_midpoint(const MProcess& mp) {
  const SargmaxResult res = sargmax_piece(mp);
  if (res.boundary) {
    throw Error(Errc::boundary_max,
                "maximum of M at the truncation edge; enlarge range_s");
  }
  const MPiece& piece = mp.pieces[res.piece];
  return 0.5 * (piece.left + piece.right);
}

CConstants c_constants(double local_mean_left, double local_mean_right,
                       double a_left, double a_right) {
  CConstants c;
  const double dl1 = local_mean_left - a_right;
  const double dl0 = local_mean_left - a_left;
  const double dr0 = local_mean_right - a_left;
  const double dr1 = local_mean_right - a_right;
  c.c1 = dl1 * dl1 - dl0 * dl0;
  c.c2 = dr0 * dr0 - dr1 * dr1;
  c.positive = c.c1 > 0.0 && c.c2 > 0.0;
  return c;
}

namespace {

// Simulates a path and grows it until the maximiser of M is interior and,
// when requested, the exp(M) tail bound is negligible. Throws boundary_max
// after the doubling budget is spent.
struct AdaptiveDraw {
  MProcess process;
  SargmaxResult argmax;
  MIntegrals integrals;
};

AdaptiveDraw adaptive_draw(const MParams& p, Rng& rng, bool need_integrals) {
  double range = kStartRangeOverLambda / p.lambda;
  CompoundPoissonPath path = simulate_path(p.lambda, range, rng);
  for (int attempt = 0; attempt <= kMaxDoublings; ++attempt) {
    AdaptiveDraw draw;
    draw.process = m_process(path, p);
    draw.argmax = sargmax_piece(draw.process);
    bool ok = !draw.argmax.boundary;
    if (ok && need_integrals) {
      draw.integrals = integrate_exp(draw.process);
      ok = draw.integrals.tail_bound <= kTailTolerance * draw.integrals.mass;
    }
    if (ok) return draw;
    if (attempt == kMaxDoublings) break;
    range *= 2.0;
    extend_path(path, range, rng);
  }
  throw Error(Errc::boundary_max,
              "criterion process not localised within the adaptive range");
}

}  // namespace

KappaResult kappa_hat(const MParams& p, int reps, std::uint64_t seed) {
  if (reps < 1) throw Error(Errc::bad_param, "reps must be >= 1");
  if (p.jump_abs == 0.0) return {0.0, 0.0};  // every copy is exactly zero
  double sum = 0.0, sum2 = 0.0;
  for (int r = 0; r < reps; ++r) {
    Rng rng = Rng::substream(seed, {static_cast<std::uint64_t>(r)});
    const AdaptiveDraw draw = adaptive_draw(p, rng, false);
    const double copy =
        p.sigma * p.jump_abs * draw.process.pieces[draw.argmax.piece].w_sum;
    sum += copy;
    sum2 += copy * copy;
  }
  KappaResult res;
  res.kappa = sum / reps;
  if (reps > 1) {
    const double var = (sum2 - sum * sum / reps) / (reps - 1);
    res.std_error = std::sqrt(std::max(var, 0.0) / reps);
  }
  return res;
}

double quantile_g(double e0, double lambda, double prob, int reps,
                  std::uint64_t seed) {
  if (!(prob > 0.5) || !(prob < 1.0)) {
    throw Error(Errc::bad_prob, "prob must lie in (0.5, 1)");
  }
  if (!(e0 > 0.0) || !(lambda > 0.0)) {
    throw Error(Errc::bad_param, "e0 and lambda must be positive");
  }
  // W* - e0 N* equals M / (sigma jump_abs) with c = 2 e0 on both sides.
  MParams p{1.0, 1.0, 2.0 * e0, 2.0 * e0, lambda};
  std::vector<double> sample;
  sample.reserve(2 * reps);
  for (int r = 0; r < reps; ++r) {
    Rng rng = Rng::substream(seed, {static_cast<std::uint64_t>(r)});
    const AdaptiveDraw draw = adaptive_draw(p, rng, false);
    const MPiece& piece = draw.process.pieces[draw.argmax.piece];
    const double s_mid = 0.5 * (piece.left + piece.right);
    sample.push_back(s_mid);
    sample.push_back(-s_mid);  // symmetrised
  }
  std::sort(sample.begin(), sample.end());
  const std::size_t count = sample.size();
  std::size_t idx = static_cast<std::size_t>(
      std::ceil(prob * static_cast<double>(count)));
  if (idx > count) idx = count;
  return sample[idx - 1];
}

Interval ci_breakpoint(const StepFit& fit, int break_index, double level,
                       double density_at, double sigma_hat, int reps,
                       std::uint64_t seed) {
  if (fit.d() < 2) {
    throw Error(Errc::bad_param, "fit has no break point");
  }
  if (break_index < 0 || break_index >= fit.d() - 1) {
    throw Error(Errc::bad_param, "break index out of range");
  }
  if (!(level > 0.0) || !(level < 1.0)) {
    throw Error(Errc::bad_prob, "level must lie in (0, 1)");
  }
  const double jump =
      std::abs(fit.levels[break_index + 1] - fit.levels[break_index]);
  const double e0 = 0.5 * jump / sigma_hat;
  const double q =
      quantile_g(e0, density_at, 0.5 * (1.0 + level), reps, seed);
  const double half_width = q / fit.n;
  const double centre = fit.breakpoints[break_index];
  return {centre - half_width, centre + half_width};
}

MIntegrals integrate_exp(const MProcess& mp) {
  const double inv = 1.0 / (mp.sigma * mp.sigma);
  double vmax = 0.0;
  for (const MPiece& piece : mp.pieces) vmax = std::max(vmax, piece.value);

  // Each side accumulates outward from zero so that a mirrored path gives
  // the exact negation of `first` and the same `mass`.
  double mass_neg = 0.0, mass_pos = 0.0, first_neg = 0.0, first_pos = 0.0;
  const MPiece& zp = mp.pieces[mp.zero_piece];
  const double zero_weight = std::exp(-vmax * inv);
  const double zero_mass = (zp.right - zp.left) * zero_weight;
  const double zero_first =
      0.5 * (zp.right * zp.right - zp.left * zp.left) * zero_weight;
  for (int i = mp.zero_piece - 1; i >= 0; --i) {
    const MPiece& piece = mp.pieces[i];
    const double w = std::exp((piece.value - vmax) * inv);
    mass_neg += (piece.right - piece.left) * w;
    first_neg += 0.5 * (piece.right * piece.right - piece.left * piece.left) * w;
  }
  for (int i = mp.zero_piece + 1; i < static_cast<int>(mp.pieces.size()); ++i) {
    const MPiece& piece = mp.pieces[i];
    const double w = std::exp((piece.value - vmax) * inv);
    mass_pos += (piece.right - piece.left) * w;
    first_pos += 0.5 * (piece.right * piece.right - piece.left * piece.left) * w;
  }

  MIntegrals out;
  out.mass = (mass_neg + mass_pos) + zero_mass;
  out.first = (first_neg + first_pos) + zero_first;

  // Beyond +-S the mean drift of M is -(1/2) c lambda |s|; continuing the
  // boundary value at that rate estimates the unobserved tail mass.
  const double sigma2 = mp.sigma * mp.sigma;
  const double decay_neg = 0.5 * mp.c_neg * mp.lambda / sigma2;
  const double decay_pos = 0.5 * mp.c_pos * mp.lambda / sigma2;
  const double tail_lo =
      decay_neg > 0.0
          ? std::exp((mp.pieces.front().value - vmax) * inv) / decay_neg
          : std::numeric_limits<double>::infinity();
  const double tail_hi =
      decay_pos > 0.0
          ? std::exp((mp.pieces.back().value - vmax) * inv) / decay_pos
          : std::numeric_limits<double>::infinity();
  out.tail_bound = tail_lo + tail_hi;
  return out;
}

BayesLimitDraw bayes_limit_draw(const MParams& p, Rng& rng) {
  const AdaptiveDraw draw = adaptive_draw(p, rng, true);
  BayesLimitDraw out;
  out.k = draw.integrals.k();
  const MPiece& top = draw.process.pieces[draw.argmax.piece];
  out.s_hat = 0.5 * (top.left + top.right);
  // Undo the max-shift so `mass` approximates the raw integral; the shift
  // only matters for mu_j reporting, never for k.
  double vmax = 0.0;
  for (const MPiece& piece : draw.process.pieces) {
    vmax = std::max(vmax, piece.value);
  }
  out.mass =
      draw.integrals.mass * std::exp(vmax / (p.sigma * p.sigma));
  return out;
}

double bayes_limit_k(const MParams& p, std::uint64_t seed) {
  Rng rng(seed);
  return bayes_limit_draw(p, rng).k;
}

}  // namespace jumpreg
