#include "ginibrenet/chernoff.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ginibrenet::spectral {

DiskRestriction enclosing_restriction(const NetworkModel& model) {
  DiskRestriction r;
  r.radius = model.enclosing_radius();
  r.palm_shift = model.process == ProcessKind::palm_beta_ginibre;
  r.beta = model.process == ProcessKind::ginibre ? 1.0 : model.beta;
  return r;
}

double log_chernoff_tail_bound(const NetworkModel& model, double x, double eps, double theta) {
  if (!(eps > 0.0)) throw std::domain_error("eps must be positive");
  if (!(theta >= 0.0)) throw std::domain_error("theta must be nonnegative");
  if (theta == 0.0) return 0.0;
  const double t = theta * eps * std::pow(model.atten_R, -model.atten_alpha);
  const double log_m = model.fading.log_mgf(t);
  const double m_minus_1 = std::expm1(log_m);
  double log_moment = 0.0;
  if (model.process == ProcessKind::poisson) {
    const double r = model.window.radius;
    log_moment = model.intensity * std::numbers::pi * r * r * m_minus_1;
  } else {
    const auto seq = eigenvalues(enclosing_restriction(model));
    for (double k : seq.values) log_moment += std::log1p(m_minus_1 * k);
  }
  return -theta * x + log_moment;
}

double chernoff_tail_bound(const NetworkModel& model, double x, double eps, double theta) {
  return std::min(1.0, std::exp(log_chernoff_tail_bound(model, x, eps, theta)));
}

ChernoffMinimum minimize_chernoff(const NetworkModel& model, double x, double eps,
                                  std::span<const double> theta_grid) {
  ChernoffMinimum best;
  double best_log = 0.0;
  for (double theta : theta_grid) {
    double value;
    try {
      value = log_chernoff_tail_bound(model, x, eps, theta);
    } catch (const MgfDivergence&) {
      continue;
    }
    if (value < best_log) {
      best_log = value;
      best.theta = theta;
    }
  }
  best.bound = std::exp(best_log);
  return best;
}

std::vector<double> geometric_grid(double lo, double hi, std::size_t n) {
  if (!(lo > 0.0 && hi >= lo) || n == 0) throw std::invalid_argument("invalid geometric grid");
  std::vector<double> grid(n);
  if (n == 1) {
    grid[0] = lo;
    return grid;
  }
  const double step = std::log(hi / lo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) grid[i] = lo * std::exp(step * static_cast<double>(i));
  return grid;
}

}  // namespace ginibrenet::spectral
