#include "ginibrenet/interference.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "ginibrenet/stats.hpp"

namespace ginibrenet {

void NetworkModel::validate() const {
  if (!(beta > 0.0 && beta <= 1.0)) throw std::domain_error("beta must lie in (0, 1]");
  if (!(window.radius > 0.0) || !std::isfinite(window.radius))
    throw std::domain_error("window radius must be positive");
  if (!(atten_R > 0.0) || !std::isfinite(atten_R)) throw std::domain_error("R must be positive");
  if (!(atten_alpha > 2.0) || !std::isfinite(atten_alpha))
    throw std::domain_error("alpha must exceed 2");
  if (!(noise_w > 0.0)) throw std::domain_error("noise w must be positive");
  if (!(threshold_tau > 0.0)) throw std::domain_error("threshold tau must be positive");
  if (!(intensity > 0.0) || !std::isfinite(intensity))
    throw std::domain_error("intensity must be positive");
  if (!window.contains_open({0.0, 0.0}))
    throw std::domain_error("the origin must lie in the interior of the window");
  if (!window.contains_open(receiver))
    throw std::domain_error("the receiver must lie in the interior of the window");
}

double attenuation(PlanarPoint x, double R, double alpha) {
  if (!(R > 0.0)) throw std::domain_error("R must be positive");
  if (!(alpha > 2.0)) throw std::domain_error("alpha must exceed 2");
  return std::pow(std::max(R, std::abs(x)), -alpha);
}

std::vector<double> path_gains(std::span<const PlanarPoint> points, const NetworkModel& model) {
  std::vector<double> gains;
  gains.reserve(points.size());
  for (const auto& p : points)
    if (model.window.contains(p))
      gains.push_back(attenuation(model.receiver - p, model.atten_R, model.atten_alpha));
  return gains;
}

double weighted_sum(std::span<const double> gains, std::span<const double> marks) {
  if (gains.size() != marks.size())
    throw std::invalid_argument("gains and marks must have equal length");
  std::vector<double> terms(gains.size());
  for (std::size_t i = 0; i < gains.size(); ++i) terms[i] = gains[i] * marks[i];
  std::sort(terms.begin(), terms.end());
  return stats::stable_sum(terms);
}

double interference(const MarkedPattern& marked, const NetworkModel& model) {
  const auto& points = marked.pattern.points;
  if (points.size() != marked.marks.size())
    throw std::invalid_argument("marked pattern: " + std::to_string(points.size()) + " points but " +
                                std::to_string(marked.marks.size()) + " marks");
  std::vector<double> terms;
  terms.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (marked.marks[i] < 0.0) throw std::invalid_argument("marks must be nonnegative");
    if (model.window.contains(points[i]))
      terms.push_back(marked.marks[i] *
                      attenuation(model.receiver - points[i], model.atten_R, model.atten_alpha));
  }
  std::sort(terms.begin(), terms.end());
  return stats::stable_sum(terms);
}

double sinr(double z0, double interference, const NetworkModel& model) {
  return z0 * attenuation(model.receiver, model.atten_R, model.atten_alpha) /
         (model.noise_w + interference);
}

double success_threshold(double z0, const NetworkModel& model) {
  return z0 * attenuation(model.receiver, model.atten_R, model.atten_alpha) /
             model.threshold_tau -
         model.noise_w;
}

PointPattern sample_interferers(const NetworkModel& model, RngStream& rng,
                                const SamplerOptions& opts) {
  auto pattern = sample_process(model.process, model.beta, model.enclosing_radius(),
                                model.intensity, rng, opts);
  std::erase_if(pattern.points, [&](const PlanarPoint& p) { return !model.window.contains(p); });
  pattern.window = model.window;
  return pattern;
}

namespace {

// Angular measure of the circle |z| = rho inside the disk.
double arc_inside(double rho, const Disk& d) {
  const double c = std::abs(d.center);
  if (rho <= d.radius - c) return 2.0 * std::numbers::pi;
  if (rho >= d.radius + c) return 0.0;
  const double cosine = (rho * rho + c * c - d.radius * d.radius) / (2.0 * rho * c);
  return 2.0 * std::acos(std::clamp(cosine, -1.0, 1.0));
}

}  // namespace

double mean_count(const NetworkModel& model) {
  const double r = model.window.radius;
  const double area = std::numbers::pi * r * r;
  switch (model.process) {
    case ProcessKind::ginibre:
    case ProcessKind::beta_ginibre:
      return area * kGinibreIntensity;
    case ProcessKind::poisson:
      return area * model.intensity;
    case ProcessKind::palm_beta_ginibre:
      break;
  }
  // Reduced Palm intensity (1/pi)(1 - exp(-|z|^2/beta)).
  const double beta = model.beta;
  const double c = std::abs(model.window.center);
  if (c == 0.0) return r * r + beta * std::expm1(-r * r / beta);
  auto integrand = [&](double rho) {
    return -std::expm1(-rho * rho / beta) * arc_inside(rho, model.window) * rho;
  };
  using boost::math::quadrature::gauss_kronrod;
  double total = 0.0;
  const double inner = std::max(0.0, r - c);
  if (inner > 0.0) total += gauss_kronrod<double, 61>::integrate(integrand, 0.0, inner, 10, 1e-13);
  total += gauss_kronrod<double, 61>::integrate(integrand, inner, r + c, 10, 1e-13);
  return total / std::numbers::pi;
}

}  // namespace ginibrenet
