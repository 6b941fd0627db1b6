#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ginibrenet/interference.hpp"
#include "ginibrenet/kernel_spectral.hpp"
#include "ginibrenet/ldp_rates.hpp"

namespace ginibrenet {

enum class Estimator { crude, tilted, single_jump, exact_spectral };

std::string to_string(Estimator estimator);
Estimator parse_estimator(const std::string& name);

struct TailEstimate {
  double probability = 0.0;
  double std_error = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
  std::size_t n_reps = 0;
  Estimator estimator = Estimator::crude;
  // log(probability), or the exact log tail for spectral estimates; -inf for zero hits.
  double log_probability = 0.0;
  std::map<std::string, double> diagnostics;
};

struct EstimationOptions {
  unsigned threads = 1;
  // single_jump: marks above split_fraction * x count as a big jump.
  double split_fraction = 0.5;
  // tilted: use this tilt for every realization instead of solving for it.
  std::optional<double> fixed_tilt;
  SamplerOptions sampler;
};

// Estimate of P(I_Lambda >= x) from n_reps replications, replication i
// drawing from RngStream(seed, i). Results do not depend on the thread count.
//   crude:       indicator of the event.
//   tilted:      marks drawn from exponentially tilted laws with per-point
//                tilt theta L(y - X_i); theta solves sum_i L_i E_theta[Z_i] = x
//                for each realization (0 when the untilted mean already
//                reaches x); likelihood-ratio weights keep it unbiased.
//   single_jump: 1{I >= x, max Z < s} + sum_i Fbar(max(M_-i, s, (x - S_-i)/L_i))
//                with s = split_fraction * x, unbiased by conditioning on the
//                index of the largest mark.
// Throws std::invalid_argument for incompatible estimator/fading pairs.
TailEstimate estimate_interference_tail(const NetworkModel& model, double x, std::size_t n_reps,
                                        Estimator estimator, std::uint64_t seed,
                                        const EstimationOptions& opts = {});

// Exact P(N >= m) from the spectrum; no sampling.
TailEstimate estimate_count_tail(const spectral::DiskRestriction& restriction, std::int64_t m);

struct SlopeReport {
  std::vector<double> x_grid;      // surviving grid points
  std::vector<double> log_p;
  std::vector<double> predicted;   // tail_asymptote(x)
  std::vector<double> growth;      // regressor
  std::vector<double> dropped_x;   // zero-hit grid points
  std::vector<TailEstimate> estimates;  // one per input grid point
  double fitted_slope = 0.0;
  double fitted_intercept = 0.0;
  double target_slope = 0.0;
  double relative_error = 0.0;
};

// Fits log p(x) against the regime's growth function from existing estimates
// (one per grid point). Zero-hit points are dropped; fewer than 3 surviving
// points is an error.
SlopeReport fit_slope(const ldp::LdpRegime& regime, std::span<const double> x_grid,
                      std::vector<TailEstimate> estimates);

// Regresses log p(x) on the regime's growth function over the grid.
// Zero-hit points are dropped; fewer than 3 surviving points is an error.
SlopeReport speed_regression(const NetworkModel& model, const ldp::LdpRegime& regime,
                             std::span<const double> x_grid, std::size_t n_reps,
                             Estimator estimator, std::uint64_t seed,
                             const EstimationOptions& opts = {});

struct SubexpRatioPoint {
  double x = 0.0;
  TailEstimate sum_tail;  // P(sum of marks in Lambda >= x)
  double baseline = 0.0;  // E[N(Lambda)] Fbar(x)
  double ratio = 0.0;
};

// P(sum_{Lambda} Z_i >= x) / (E[N(Lambda)] Fbar(x)) by single-jump conditional
// Monte Carlo. E[N(Lambda)] is mean_count(model) unless given explicitly.
// Requires subexponential fading and E[N(Lambda)] > 0.
std::vector<SubexpRatioPoint> subexp_sum_ratio(const NetworkModel& model,
                                               std::span<const double> x_grid,
                                               std::size_t n_reps, std::uint64_t seed,
                                               const EstimationOptions& opts = {},
                                               std::optional<double> expected_count = {});

struct DominatingEventProbe {
  double r = 0.0;             // radius of b(y, r)
  long long block_n = 0;      // points required in b(y, r) for the block bound
  double p_joint = 0.0;       // crude estimate of P(eps I > x)
  double se_joint = 0.0;
  double p_block = 0.0;       // deterministic lower bound
  double p_single = 0.0;      // Fbar(R^a x / eps) * P(N(b(y,r)) >= 1)
  double se_single = 0.0;
  bool block_holds = false;   // p_block <= p_joint + 3 se_joint
  bool single_holds = false;  // p_single <= p_joint + 3 sqrt(se_joint^2 + se_single^2)
};

// r = min(d/2, 0.99 R) where d is the distance from y to the window boundary.
// Block bounds:
//   bounded fading: P(#{points in b(y,r) with Z > (1-delta)B} >= [R^a x/((1-delta)B eps)
//                   + 1/(1-delta)] + 2), delta = 0.2, evaluated spectrally;
//   other fading:   P(N(b(y,r)) >= n) Fbar(R^a x/(n eps))^n with n from the Weibull
//                   proof constants (weibull_super) or the best n in 1..64.
// For the reduced Palm process counts are bounded below through the thinned
// Ginibre process with one extra point.
// Throws std::invalid_argument when r < 1e-3 or block_n == 0 is forced.
DominatingEventProbe dominating_event_probe(const NetworkModel& model, double x, double eps,
                                            std::size_t n_reps, std::uint64_t seed,
                                            const EstimationOptions& opts = {},
                                            std::optional<long long> block_n = std::nullopt);

}  // namespace ginibrenet
