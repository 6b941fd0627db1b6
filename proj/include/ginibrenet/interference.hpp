#pragma once

#include <span>
#include <vector>

#include "ginibrenet/fading.hpp"
#include "ginibrenet/samplers.hpp"
#include "ginibrenet/types.hpp"

namespace ginibrenet {

// Full scenario: interferers of the given process restricted to the window
// Lambda, a receiver at y and a transmitter at the origin.
struct NetworkModel {
  ProcessKind process = ProcessKind::palm_beta_ginibre;
  double beta = 1.0;
  Disk window{{0.0, 0.0}, 2.0};
  PlanarPoint receiver{0.5, 0.0};
  double atten_R = 1.0;
  double atten_alpha = 4.0;
  FadingSpec fading = FadingSpec::exponential(1.0);
  double noise_w = 1.0;
  double threshold_tau = 1.0;
  // Used by the Poisson process only; the Ginibre family has intensity 1/pi.
  double intensity = kGinibreIntensity;

  // Throws std::domain_error on any violated standing assumption.
  void validate() const;
  // Radius of the smallest origin-centered disk containing the window.
  double enclosing_radius() const { return std::abs(window.center) + window.radius; }
};

// L(x) = max(R, |x|)^(-alpha).
double attenuation(PlanarPoint x, double R, double alpha);

struct MarkedPattern {
  PointPattern pattern;
  std::vector<double> marks;
};

// I = sum of Z_i L(y - X_i) over points in the closed window. Terms are
// summed in ascending order with compensation, so the result does not
// depend on the order of the (point, mark) pairs.
double interference(const MarkedPattern& marked, const NetworkModel& model);

// L(y - X_i) for the points inside the window, in input order.
std::vector<double> path_gains(std::span<const PlanarPoint> points, const NetworkModel& model);

// sum a_i z_i in ascending order of the terms, compensated.
double weighted_sum(std::span<const double> gains, std::span<const double> marks);

double sinr(double z0, double interference, const NetworkModel& model);
// z0 L(y) / tau - w: decoding succeeds iff the interference is below this level.
double success_threshold(double z0, const NetworkModel& model);

// Interferers of one realization: the process is sampled on the enclosing
// origin-centered disk and restricted to the window.
PointPattern sample_interferers(const NetworkModel& model, RngStream& rng,
                                const SamplerOptions& opts = {});

// Exact E[N(Lambda)] for the configured process.
double mean_count(const NetworkModel& model);

}  // namespace ginibrenet
