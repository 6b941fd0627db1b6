#include "ginibrenet/tail_estimation.hpp"

#include <algorithm>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "ginibrenet/parallel.hpp"
#include "ginibrenet/stats.hpp"

namespace ginibrenet {

std::string to_string(Estimator estimator) {
  switch (estimator) {
    case Estimator::crude: return "crude";
    case Estimator::tilted: return "tilted";
    case Estimator::single_jump: return "single_jump";
    case Estimator::exact_spectral: return "exact_spectral";
  }
  return "unknown";
}

Estimator parse_estimator(const std::string& name) {
  if (name == "crude") return Estimator::crude;
  if (name == "tilted") return Estimator::tilted;
  if (name == "single_jump" || name == "single-jump") return Estimator::single_jump;
  if (name == "exact_spectral" || name == "exact-spectral") return Estimator::exact_spectral;
  throw std::invalid_argument("unknown estimator '" + name + "'");
}

namespace {

constexpr double kZ95 = 1.959963984540054;

bool light_tailed(FadingKind kind) {
  return kind == FadingKind::bounded || kind == FadingKind::weibull_super ||
         kind == FadingKind::exponential;
}

bool single_jump_ok(FadingKind kind) {
  return kind == FadingKind::weibull_sub || kind == FadingKind::pareto ||
         kind == FadingKind::exponential;
}

void check_compatible(const FadingSpec& fading, Estimator estimator) {
  switch (estimator) {
    case Estimator::crude: return;
    case Estimator::tilted:
      if (!light_tailed(fading.kind()))
        throw std::invalid_argument("tilted estimator needs a finite fading MGF; " +
                                    to_string(fading.kind()) + " fading has none");
      return;
    case Estimator::single_jump:
      if (!single_jump_ok(fading.kind()))
        throw std::invalid_argument(
            "single_jump estimator needs subexponential or exponential fading, got " +
            to_string(fading.kind()));
      return;
    case Estimator::exact_spectral:
      throw std::invalid_argument("exact_spectral applies to count tails only");
  }
}

TailEstimate summarize(std::span<const double> values, Estimator estimator) {
  TailEstimate est;
  est.estimator = estimator;
  est.n_reps = values.size();
  const auto m = stats::moments(values);
  std::size_t hits = 0;
  double sum_w = 0.0, sum_w2 = 0.0;
  for (double v : values) {
    if (v > 0.0) ++hits;
    sum_w += v;
    sum_w2 += v * v;
  }
  est.probability = std::clamp(m.mean, 0.0, 1.0);
  est.std_error = values.size() > 1 ? std::sqrt(m.variance / static_cast<double>(values.size()))
                                    : 0.0;
  est.diagnostics["hits"] = static_cast<double>(hits);
  est.diagnostics["bit_exact"] = 1.0;
  est.diagnostics["ess"] = sum_w2 > 0.0 ? sum_w * sum_w / sum_w2 : 0.0;
  if (hits == 0) {
    est.probability = 0.0;
    est.std_error = 0.0;
    est.ci_lo = 0.0;
    // Exact (Clopper-Pearson) one-sided 97.5% upper limit for zero successes.
    est.ci_hi = 1.0 - std::pow(0.025, 1.0 / static_cast<double>(values.size()));
    est.log_probability = -std::numeric_limits<double>::infinity();
    est.diagnostics["zero_hits"] = 1.0;
    return est;
  }
  est.ci_lo = std::max(0.0, est.probability - kZ95 * est.std_error);
  est.ci_hi = std::min(1.0, est.probability + kZ95 * est.std_error);
  est.log_probability = std::log(est.probability);
  est.diagnostics["zero_hits"] = 0.0;
  if (est.probability > 0.0) est.diagnostics["relative_error"] = est.std_error / est.probability;
  return est;
}

TailEstimate certain_event(std::size_t n_reps, Estimator estimator) {
  TailEstimate est;
  est.probability = 1.0;
  est.ci_lo = est.ci_hi = 1.0;
  est.n_reps = n_reps;
  est.estimator = estimator;
  est.log_probability = 0.0;
  est.diagnostics["exact"] = 1.0;
  return est;
}

// Tilt theta with sum_i a_i E_{theta a_i}[Z] = x.
double solve_tilt(const FadingSpec& fading, std::span<const double> gains, double x) {
  auto mean_at = [&](double theta) {
    double total = 0.0;
    for (double a : gains) total += a * fading.tilted_mean(theta * a);
    return total;
  };
  if (mean_at(0.0) >= x) return 0.0;
  const double amax = *std::max_element(gains.begin(), gains.end());
  double hi = 0.0;
  const double cap = fading.mgf_abscissa() / amax;
  if (std::isfinite(cap)) {
    for (int k = 1; k <= 60; ++k) {
      hi = cap * (1.0 - std::ldexp(1.0, -k));
      if (mean_at(hi) > x) break;
    }
  } else {
    hi = 1.0 / amax;
    for (int k = 0; k < 200 && mean_at(hi) <= x; ++k) hi *= 2.0;
  }
  if (!(mean_at(hi) > x)) return hi;
  auto f = [&](double theta) { return mean_at(theta) - x; };
  boost::uintmax_t iters = 100;
  const auto [lo_root, hi_root] =
      boost::math::tools::toms748_solve(f, 0.0, hi, f(0.0), f(hi),
                                        boost::math::tools::eps_tolerance<double>(40), iters);
  return 0.5 * (lo_root + hi_root);
}

double single_jump_value(const FadingSpec& fading, std::span<const double> gains,
                         std::span<const double> marks, double x, double split) {
  const std::size_t n = marks.size();
  if (n == 0) return 0.0;
  const double total = weighted_sum(gains, marks);
  // Largest and second-largest marks give max_{j != i} Z_j for every i.
  std::size_t top = 0;
  for (std::size_t i = 1; i < n; ++i)
    if (marks[i] > marks[top]) top = i;
  double second = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    if (i != top) second = std::max(second, marks[i]);
  double value = (total >= x && marks[top] < split) ? 1.0 : 0.0;
  std::vector<double> g_other, z_other;
  g_other.reserve(n);
  z_other.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    g_other.clear();
    z_other.clear();
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      g_other.push_back(gains[j]);
      z_other.push_back(marks[j]);
    }
    const double rest = weighted_sum(g_other, z_other);
    const double max_other = i == top ? second : marks[top];
    const double level = std::max({max_other, split, (x - rest) / gains[i]});
    value += fading.survival(level);
  }
  return value;
}

double estimate_value(const NetworkModel& model, std::span<const double> gains, double x,
                      Estimator estimator, const EstimationOptions& opts, RngStream& rng,
                      double& theta_out) {
  const auto& fading = model.fading;
  theta_out = 0.0;
  const std::size_t n = gains.size();
  std::vector<double> marks(n);
  switch (estimator) {
    case Estimator::crude:
      for (auto& z : marks) z = fading.sample(rng);
      return weighted_sum(gains, marks) >= x ? 1.0 : 0.0;
    case Estimator::tilted: {
      if (n == 0) return 0.0;
      if (fading.kind() == FadingKind::bounded) {
        double reach = 0.0;
        for (double a : gains) reach += a * fading.B();
        if (!opts.fixed_tilt && reach <= x) return 0.0;
      }
      const double theta = opts.fixed_tilt ? *opts.fixed_tilt : solve_tilt(fading, gains, x);
      theta_out = theta;
      double log_m = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        marks[i] = fading.sample_tilted(theta * gains[i], rng);
        if (theta != 0.0) log_m += fading.log_mgf(theta * gains[i]);
      }
      const double total = weighted_sum(gains, marks);
      if (total < x) return 0.0;
      return theta == 0.0 ? 1.0 : std::exp(-theta * total + log_m);
    }
    case Estimator::single_jump:
      for (auto& z : marks) z = fading.sample(rng);
      return single_jump_value(fading, gains, marks, x, opts.split_fraction * x);
    case Estimator::exact_spectral:
      break;
  }
  throw std::invalid_argument("unsupported estimator");
}

}  // namespace

TailEstimate estimate_interference_tail(const NetworkModel& model, double x, std::size_t n_reps,
                                        Estimator estimator, std::uint64_t seed,
                                        const EstimationOptions& opts) {
  model.validate();
  check_compatible(model.fading, estimator);
  if (n_reps == 0) throw std::invalid_argument("n_reps must be positive");
  if (std::isnan(x)) throw std::invalid_argument("x must be a number");
  if (x <= 0.0) return certain_event(n_reps, estimator);
  if (estimator == Estimator::tilted && opts.fixed_tilt) {
    if (!(*opts.fixed_tilt >= 0.0)) throw std::invalid_argument("fixed tilt must be >= 0");
    const double amax = std::pow(model.atten_R, -model.atten_alpha);
    if (*opts.fixed_tilt * amax >= model.fading.mgf_abscissa())
      throw MgfDivergence("fixed tilt exceeds the fading MGF abscissa");
  }

  struct Rep {
    double value = 0.0;
    double theta = 0.0;
  };
  const auto reps = replicate(n_reps, seed, opts.threads, [&](RngStream& rng, std::size_t) {
    const auto pattern = sample_interferers(model, rng, opts.sampler);
    const auto gains = path_gains(pattern.points, model);
    Rep r;
    r.value = estimate_value(model, gains, x, estimator, opts, rng, r.theta);
    return r;
  });
  std::vector<double> values(n_reps), thetas(n_reps);
  for (std::size_t i = 0; i < n_reps; ++i) {
    values[i] = reps[i].value;
    thetas[i] = reps[i].theta;
  }
  auto est = summarize(values, estimator);
  if (estimator == Estimator::tilted) est.diagnostics["mean_tilt"] = stats::moments(thetas).mean;
  if (estimator == Estimator::single_jump) est.diagnostics["split_fraction"] = opts.split_fraction;
  est.diagnostics["threads"] = static_cast<double>(std::max(1u, opts.threads));
  return est;
}

TailEstimate estimate_count_tail(const spectral::DiskRestriction& restriction, std::int64_t m) {
  restriction.validate();
  TailEstimate est;
  est.estimator = Estimator::exact_spectral;
  est.n_reps = 0;
  est.diagnostics["exact_spectral"] = 1.0;
  if (m <= 0) {
    est.probability = est.ci_lo = est.ci_hi = 1.0;
    est.log_probability = 0.0;
    return est;
  }
  est.log_probability = spectral::log_count_survival(restriction, m);
  est.probability = std::exp(est.log_probability);
  est.ci_lo = est.ci_hi = est.probability;
  return est;
}

SlopeReport speed_regression(const NetworkModel& model, const ldp::LdpRegime& regime,
                             std::span<const double> x_grid, std::size_t n_reps,
                             Estimator estimator, std::uint64_t seed,
                             const EstimationOptions& opts) {
  if (x_grid.size() < 3)
    throw std::invalid_argument("speed regression needs at least 3 grid points");
  for (std::size_t i = 1; i < x_grid.size(); ++i)
    if (!(x_grid[i] > x_grid[i - 1]))
      throw std::invalid_argument("x grid must be strictly increasing");
  if (!(x_grid.front() > 0.0)) throw std::invalid_argument("x grid must be positive");

  std::vector<TailEstimate> estimates;
  for (std::size_t i = 0; i < x_grid.size(); ++i)
    estimates.push_back(estimate_interference_tail(model, x_grid[i], n_reps, estimator,
                                                   derive_seed(seed, i), opts));
  return fit_slope(regime, x_grid, std::move(estimates));
}

SlopeReport fit_slope(const ldp::LdpRegime& regime, std::span<const double> x_grid,
                      std::vector<TailEstimate> estimates) {
  if (estimates.size() != x_grid.size())
    throw std::invalid_argument("one estimate per grid point is required");
  SlopeReport report;
  report.target_slope = ldp::tail_constant(regime);
  for (std::size_t i = 0; i < x_grid.size(); ++i) {
    const double x = x_grid[i];
    if (estimates[i].probability > 0.0) {
      report.x_grid.push_back(x);
      report.log_p.push_back(estimates[i].log_probability);
      report.predicted.push_back(ldp::tail_asymptote(regime, x));
      report.growth.push_back(ldp::growth(regime, x));
    } else {
      report.dropped_x.push_back(x);
    }
  }
  report.estimates = std::move(estimates);
  if (report.x_grid.size() < 3)
    throw std::runtime_error("speed regression: only " + std::to_string(report.x_grid.size()) +
                             " grid points have nonzero estimates (need 3)");
  const auto fit = stats::linear_fit(report.growth, report.log_p);
  report.fitted_slope = fit.slope;
  report.fitted_intercept = fit.intercept;
  report.relative_error =
      std::abs(report.fitted_slope - report.target_slope) / std::abs(report.target_slope);
  return report;
}

std::vector<SubexpRatioPoint> subexp_sum_ratio(const NetworkModel& model,
                                               std::span<const double> x_grid,
                                               std::size_t n_reps, std::uint64_t seed,
                                               const EstimationOptions& opts,
                                               std::optional<double> expected_count) {
  model.validate();
  const auto kind = model.fading.kind();
  if (kind != FadingKind::pareto && kind != FadingKind::weibull_sub)
    throw std::invalid_argument("sum-tail ratio needs subexponential fading");
  if (n_reps == 0) throw std::invalid_argument("n_reps must be positive");
  const double mean_n = expected_count ? *expected_count : mean_count(model);
  if (!(mean_n > 0.0)) throw std::invalid_argument("E[N(Lambda)] is zero: empty window");

  std::vector<SubexpRatioPoint> out;
  for (std::size_t k = 0; k < x_grid.size(); ++k) {
    const double x = x_grid[k];
    if (!(x > 0.0)) throw std::invalid_argument("x grid must be positive");
    const auto values =
        replicate(n_reps, derive_seed(seed, k), opts.threads, [&](RngStream& rng, std::size_t) {
          const auto pattern = sample_interferers(model, rng, opts.sampler);
          std::vector<double> ones(pattern.points.size(), 1.0);
          std::vector<double> marks(pattern.points.size());
          for (auto& z : marks) z = model.fading.sample(rng);
          return single_jump_value(model.fading, ones, marks, x, opts.split_fraction * x);
        });
    SubexpRatioPoint point;
    point.x = x;
    point.sum_tail = summarize(values, Estimator::single_jump);
    point.baseline = mean_n * model.fading.survival(x);
    point.ratio = point.sum_tail.probability / point.baseline;
    out.push_back(std::move(point));
  }
  return out;
}

namespace {

// log P(N(b(y, r)) >= m) for the model's process, bounded below for the
// reduced Palm process through the thinned Ginibre count with one extra point.
double log_ball_count_lower(const NetworkModel& model, double r, std::int64_t m,
                            double extra_retention) {
  if (model.process == ProcessKind::poisson) {
    const double mean = model.intensity * std::numbers::pi * r * r * extra_retention;
    return spectral::log_poisson_survival(m, mean);
  }
  spectral::DiskRestriction ball;
  ball.radius = r;
  ball.beta = model.process == ProcessKind::ginibre ? 1.0 : model.beta;
  const std::int64_t needed = model.process == ProcessKind::palm_beta_ginibre ? m + 1 : m;
  const auto count = std::max(spectral::eigenvalue_cap(ball.scaled_radius()),
                              static_cast<std::size_t>(needed) + 64) +
                     static_cast<std::size_t>(needed);
  const auto trials = spectral::log_spectrum(ball, count, extra_retention);
  return spectral::log_poisson_binomial_survival(trials, needed);
}

}  // namespace

DominatingEventProbe dominating_event_probe(const NetworkModel& model, double x, double eps,
                                            std::size_t n_reps, std::uint64_t seed,
                                            const EstimationOptions& opts,
                                            std::optional<long long> block_n) {
  model.validate();
  if (!(x > 0.0)) throw std::invalid_argument("x must be positive");
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  if (n_reps == 0) throw std::invalid_argument("n_reps must be positive");
  if (block_n && *block_n < 1)
    throw std::invalid_argument("block size n must be at least 1 (n = 0 gives the trivial event)");

  DominatingEventProbe probe;
  const double gap = model.window.radius - std::abs(model.receiver - model.window.center);
  probe.r = std::min(0.5 * gap, 0.99 * model.atten_R);
  if (!(probe.r >= 1e-3))
    throw std::invalid_argument("receiver too close to the window boundary for the probe ball");

  const double Ra = std::pow(model.atten_R, model.atten_alpha);
  const double level = x / eps;  // eps I > x  <=>  I > x / eps
  const auto& fading = model.fading;

  // Block lower bound.
  if (fading.kind() == FadingKind::bounded) {
    const double delta = 0.2;
    const double keep = fading.survival((1.0 - delta) * fading.B());
    const double v = Ra * x / ((1.0 - delta) * fading.B() * eps) + 1.0 / (1.0 - delta);
    const auto m = static_cast<std::int64_t>(std::floor(v)) + 2;
    probe.block_n = m;
    // The Palm correction is already part of the +2 above.
    NetworkModel plain = model;
    if (plain.process == ProcessKind::palm_beta_ginibre) plain.process = ProcessKind::beta_ginibre;
    probe.p_block = std::exp(log_ball_count_lower(plain, probe.r, m, keep));
  } else {
    auto log_block = [&](long long n) {
      const double thr = Ra * x / (static_cast<double>(n) * eps);
      return log_ball_count_lower(model, probe.r, n, 1.0) +
             static_cast<double>(n) * fading.log_survival(thr);
    };
    long long n = 0;
    if (block_n) {
      n = *block_n;
    } else if (fading.kind() == FadingKind::weibull_super && eps < std::min(1.0, x)) {
      const auto regime = ldp::LdpRegime::from_fading(fading, model.atten_R, model.atten_alpha);
      n = std::max(1LL, ldp::proof_constants(regime, x, eps).block_n);
    } else {
      double best = -std::numeric_limits<double>::infinity();
      for (long long k = 1; k <= 64; ++k) {
        const double value = log_block(k);
        if (value > best) {
          best = value;
          n = k;
        }
      }
    }
    probe.block_n = n;
    probe.p_block = std::exp(log_block(n));
  }

  struct Rep {
    double joint = 0.0;
    double ball = 0.0;
  };
  const Disk ball{model.receiver, probe.r};
  const auto reps = replicate(n_reps, seed, opts.threads, [&](RngStream& rng, std::size_t) {
    const auto pattern = sample_interferers(model, rng, opts.sampler);
    const auto gains = path_gains(pattern.points, model);
    std::vector<double> marks(gains.size());
    for (auto& z : marks) z = fading.sample(rng);
    Rep r;
    r.joint = weighted_sum(gains, marks) > level ? 1.0 : 0.0;
    r.ball = std::any_of(pattern.points.begin(), pattern.points.end(),
                         [&](const PlanarPoint& p) { return ball.contains_open(p); })
                 ? 1.0
                 : 0.0;
    return r;
  });
  std::vector<double> joint(n_reps), in_ball(n_reps);
  for (std::size_t i = 0; i < n_reps; ++i) {
    joint[i] = reps[i].joint;
    in_ball[i] = reps[i].ball;
  }
  const auto mj = stats::moments(joint);
  const auto mb = stats::moments(in_ball);
  const double n = static_cast<double>(n_reps);
  probe.p_joint = mj.mean;
  probe.se_joint = n_reps > 1 ? std::sqrt(mj.variance / n) : 0.0;
  const double jump = fading.survival(Ra * x / eps);
  probe.p_single = jump * mb.mean;
  probe.se_single = n_reps > 1 ? jump * std::sqrt(mb.variance / n) : 0.0;
  probe.block_holds = probe.p_block <= probe.p_joint + 3.0 * probe.se_joint;
  probe.single_holds =
      probe.p_single <= probe.p_joint + 3.0 * std::hypot(probe.se_joint, probe.se_single);
  return probe;
}

}  // namespace ginibrenet
