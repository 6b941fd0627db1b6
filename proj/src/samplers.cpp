#include "ginibrenet/samplers.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "ginibrenet/parallel.hpp"
#include "ginibrenet/stats.hpp"

namespace ginibrenet {

std::string to_string(ProcessKind kind) {
  switch (kind) {
    case ProcessKind::ginibre: return "ginibre";
    case ProcessKind::beta_ginibre: return "beta_ginibre";
    case ProcessKind::palm_beta_ginibre: return "palm_beta_ginibre";
    case ProcessKind::poisson: return "poisson";
  }
  return "unknown";
}

ProcessKind parse_process_kind(const std::string& name) {
  if (name == "ginibre") return ProcessKind::ginibre;
  if (name == "beta_ginibre" || name == "beta-ginibre") return ProcessKind::beta_ginibre;
  if (name == "palm_beta_ginibre" || name == "palm-beta-ginibre" || name == "palm")
    return ProcessKind::palm_beta_ginibre;
  if (name == "poisson") return ProcessKind::poisson;
  throw std::invalid_argument("unknown process kind '" + name + "'");
}

namespace {

void check_radius(double radius) {
  if (!std::isfinite(radius) || radius <= 0.0)
    throw std::domain_error("window radius must be positive and finite");
}

void check_beta(double beta) {
  if (!(beta > 0.0 && beta <= 1.0)) throw std::domain_error("beta must lie in (0, 1]");
}

PlanarPoint clamp_to_disk(PlanarPoint p, double radius) {
  while (std::abs(p) > radius) p *= 1.0 - 0x1p-52;
  return p;
}

// Projection DPP with orthonormal features phi_e(z) = z^e / sqrt(e! P(e+1, r^2))
// on b(O, r), for the selected exponents e.
class ProjectionSampler {
 public:
  ProjectionSampler(std::vector<int> exponents, double radius, std::size_t max_proposals)
      : exps_(std::move(exponents)), r2_(radius * radius), max_proposals_(max_proposals) {
    log_norm_.reserve(exps_.size());
    mass_.reserve(exps_.size());
    for (int e : exps_) {
      const double mass = boost::math::gamma_p(e + 1.0, r2_);
      mass_.push_back(mass);
      log_norm_.push_back(-0.5 * (std::lgamma(e + 1.0) + std::log(mass)));
    }
  }

  std::vector<PlanarPoint> run(RngStream& rng) {
    const auto n = static_cast<Eigen::Index>(exps_.size());
    std::vector<PlanarPoint> points;
    points.reserve(exps_.size());
    Eigen::MatrixXcd basis(n, n);
    Eigen::VectorXcd v(n);
    for (Eigen::Index k = 0; k < n; ++k) {
      std::size_t proposals = 0;
      while (true) {
        if (++proposals > max_proposals_)
          throw SamplerStall("projection sampler exceeded its proposal budget", points.size(),
                             exps_.size(), proposals - 1);
        const auto s = static_cast<std::size_t>(rng.uniform() * static_cast<double>(n));
        const double t = std::min(
            r2_, boost::math::gamma_p_inv(exps_[s] + 1.0, rng.uniform_positive() * mass_[s]));
        const double angle = 2.0 * std::numbers::pi * rng.uniform();
        const PlanarPoint z = std::polar(std::sqrt(t), angle);
        features(z, v);
        Eigen::VectorXcd residual = v;
        if (k > 0) {
          const auto q = basis.leftCols(k);
          residual -= q * (q.adjoint() * residual);
          residual -= q * (q.adjoint() * residual);
        }
        const double accept = residual.squaredNorm();
        if (rng.uniform() < accept) {
          basis.col(k) = residual / std::sqrt(accept);
          points.push_back(z);
          break;
        }
      }
    }
    return points;
  }

 private:
  // Unit-normalized feature vector at z.
  void features(PlanarPoint z, Eigen::VectorXcd& v) const {
    const auto n = exps_.size();
    const double modulus = std::abs(z);
    const double phase = std::arg(z);
    std::vector<double> logs(n);
    double top = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      const int e = exps_[i];
      const double lm = e == 0 ? 0.0 : e * std::log(modulus);
      logs[i] = lm + log_norm_[i];
      top = std::max(top, logs[i]);
    }
    double norm2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double mag = std::exp(logs[i] - top);
      v[static_cast<Eigen::Index>(i)] = std::polar(mag, exps_[i] * phase);
      norm2 += mag * mag;
    }
    v /= std::sqrt(norm2);
  }

  std::vector<int> exps_;
  double r2_;
  std::size_t max_proposals_;
  std::vector<double> log_norm_;
  std::vector<double> mass_;
};

// Ginibre (or its reduced Palm version) on b(O, radius).
std::vector<PlanarPoint> sample_disk_dpp(double radius, bool palm, RngStream& rng,
                                         const SamplerOptions& opts) {
  spectral::DiskRestriction restriction;
  restriction.radius = radius;
  restriction.palm_shift = palm;
  const auto seq = spectral::eigenvalues(restriction, opts.tolerance);
  std::vector<int> selected;
  for (std::size_t m = 0; m < seq.values.size(); ++m)
    if (rng.uniform() < seq.values[m]) selected.push_back(static_cast<int>(m) + (palm ? 1 : 0));
  if (selected.empty()) return {};
  ProjectionSampler sampler(std::move(selected), radius, opts.max_proposals_per_point);
  return sampler.run(rng);
}

PointPattern thin_and_scale(double beta, double window_radius, bool palm, ProcessKind kind,
                            RngStream& rng, const SamplerOptions& opts) {
  check_beta(beta);
  check_radius(window_radius);
  const double scale = std::sqrt(beta);
  auto raw = sample_disk_dpp(window_radius / scale, palm, rng, opts);
  PointPattern out;
  out.window = Disk{{0.0, 0.0}, window_radius};
  out.process = kind;
  out.beta = beta;
  out.seed = rng.master_seed();
  out.points.reserve(raw.size());
  for (const auto& p : raw) {
    if (beta < 1.0 && !(rng.uniform() < beta)) continue;
    out.points.push_back(clamp_to_disk(beta < 1.0 ? p * scale : p, window_radius));
  }
  return out;
}

}  // namespace

PointPattern sample_ginibre_disk(double radius, RngStream& rng, const SamplerOptions& opts) {
  return thin_and_scale(1.0, radius, false, ProcessKind::ginibre, rng, opts);
}

PointPattern sample_beta_ginibre(double beta, double window_radius, RngStream& rng,
                                 const SamplerOptions& opts) {
  return thin_and_scale(beta, window_radius, false, ProcessKind::beta_ginibre, rng, opts);
}

PointPattern sample_palm_beta_ginibre(double beta, double window_radius, RngStream& rng,
                                      const SamplerOptions& opts) {
  return thin_and_scale(beta, window_radius, true, ProcessKind::palm_beta_ginibre, rng, opts);
}

PointPattern sample_poisson(double window_radius, double intensity, RngStream& rng) {
  check_radius(window_radius);
  if (!std::isfinite(intensity) || intensity <= 0.0)
    throw std::domain_error("intensity must be positive and finite");
  PointPattern out;
  out.window = Disk{{0.0, 0.0}, window_radius};
  out.process = ProcessKind::poisson;
  out.seed = rng.master_seed();
  const auto n = rng.poisson(intensity * std::numbers::pi * window_radius * window_radius);
  out.points.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    const double rho = window_radius * std::sqrt(rng.uniform());
    const double angle = 2.0 * std::numbers::pi * rng.uniform();
    out.points.push_back(clamp_to_disk(std::polar(rho, angle), window_radius));
  }
  return out;
}

PointPattern sample_process(ProcessKind kind, double beta, double window_radius, double intensity,
                            RngStream& rng, const SamplerOptions& opts) {
  switch (kind) {
    case ProcessKind::ginibre: return sample_ginibre_disk(window_radius, rng, opts);
    case ProcessKind::beta_ginibre: return sample_beta_ginibre(beta, window_radius, rng, opts);
    case ProcessKind::palm_beta_ginibre:
      return sample_palm_beta_ginibre(beta, window_radius, rng, opts);
    case ProcessKind::poisson: return sample_poisson(window_radius, intensity, rng);
  }
  throw std::invalid_argument("unknown process kind");
}

std::vector<double> sorted_squared_moduli(const PointPattern& pattern) {
  std::vector<double> out;
  out.reserve(pattern.points.size());
  for (const auto& p : pattern.points) out.push_back(std::norm(p));
  std::sort(out.begin(), out.end());
  return out;
}

KostlanReport kostlan_validation(double radius, std::size_t n_reps, std::uint64_t seed,
                                 std::size_t max_order, unsigned threads,
                                 const SamplerOptions& opts) {
  check_radius(radius);
  if (n_reps == 0) throw std::invalid_argument("Kostlan validation needs at least one replication");
  if (max_order == 0) throw std::invalid_argument("Kostlan validation needs max_order >= 1");
  const double r2 = radius * radius;
  for (std::size_t i = 1; i <= max_order; ++i) {
    const auto order = static_cast<double>(i);
    if (r2 < order + 6.0 * std::sqrt(order))
      throw std::invalid_argument("radius too small for the tested order statistics");
  }

  KostlanReport report;
  report.radius = radius;
  report.n_reps = n_reps;
  report.gamma_terms = static_cast<std::size_t>(std::ceil(r2)) + 60;

  // Order statistics beyond r^2 are censored at r^2 on both sides: the
  // disk-restricted process is the infinite process restricted to the disk.
  auto censor_smallest = [&](std::vector<double> values) {
    std::vector<double> out(max_order, r2);
    std::partial_sort(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(
                                                           std::min(max_order, values.size())),
                      values.end());
    for (std::size_t i = 0; i < max_order && i < values.size(); ++i)
      out[i] = std::min(values[i], r2);
    return out;
  };

  const auto sampled = replicate(n_reps, derive_seed(seed, 1), threads,
                                 [&](RngStream& rng, std::size_t) {
                                   return censor_smallest(
                                       sorted_squared_moduli(sample_ginibre_disk(radius, rng, opts)));
                                 });
  const auto direct = replicate(n_reps, derive_seed(seed, 2), threads,
                                [&](RngStream& rng, std::size_t) {
                                  std::vector<double> g(report.gamma_terms);
                                  for (std::size_t i = 0; i < g.size(); ++i)
                                    g[i] = rng.gamma(static_cast<double>(i + 1));
                                  return censor_smallest(std::move(g));
                                });

  for (std::size_t order = 1; order <= max_order; ++order) {
    std::vector<double> a, b;
    a.reserve(n_reps);
    b.reserve(n_reps);
    for (std::size_t rep = 0; rep < n_reps; ++rep) {
      a.push_back(sampled[rep][order - 1]);
      b.push_back(direct[rep][order - 1]);
    }
    const auto ks = stats::ks_two_sample(std::move(a), std::move(b));
    report.checks.push_back({order, ks.statistic, ks.p_value});
  }
  return report;
}

}  // namespace ginibrenet
