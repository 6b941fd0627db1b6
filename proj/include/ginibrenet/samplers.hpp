#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ginibrenet/kernel_spectral.hpp"
#include "ginibrenet/rng.hpp"
#include "ginibrenet/types.hpp"

namespace ginibrenet {

enum class ProcessKind { ginibre, beta_ginibre, palm_beta_ginibre, poisson };

std::string to_string(ProcessKind kind);
// Accepts the canonical names and the CLI spellings (beta-ginibre, palm).
ProcessKind parse_process_kind(const std::string& name);

struct PointPattern {
  std::vector<PlanarPoint> points;
  Disk window;
  ProcessKind process = ProcessKind::ginibre;
  double beta = 1.0;
  std::uint64_t seed = 0;

  std::size_t size() const { return points.size(); }
};

struct SamplerOptions {
  double tolerance = spectral::kDefaultTolerance;
  std::size_t max_proposals_per_point = 1'000'000;
};

// Ginibre process restricted to b(O, radius): Bernoulli(kappa_m) selection of
// eigenfunctions z^m followed by sequential sampling of the projection process.
PointPattern sample_ginibre_disk(double radius, RngStream& rng, const SamplerOptions& opts = {});

// Ginibre on b(O, window_radius/sqrt(beta)), independently thinned with
// retention beta, then scaled by sqrt(beta).
PointPattern sample_beta_ginibre(double beta, double window_radius, RngStream& rng,
                                 const SamplerOptions& opts = {});

// Reduced Palm version at the origin of the beta-Ginibre process on
// b(O, window_radius): eigenfunctions z^m, m >= 1, then thinning and scaling.
PointPattern sample_palm_beta_ginibre(double beta, double window_radius, RngStream& rng,
                                      const SamplerOptions& opts = {});

// Homogeneous Poisson process on b(O, window_radius).
PointPattern sample_poisson(double window_radius, double intensity, RngStream& rng);

PointPattern sample_process(ProcessKind kind, double beta, double window_radius, double intensity,
                            RngStream& rng, const SamplerOptions& opts = {});

// Squared moduli of a pattern, sorted ascending.
std::vector<double> sorted_squared_moduli(const PointPattern& pattern);

struct KostlanOrderCheck {
  std::size_t order = 1;  // 1 = smallest squared modulus
  double ks_statistic = 0.0;
  double p_value = 0.0;
};

struct KostlanReport {
  double radius = 0.0;
  std::size_t n_reps = 0;
  std::size_t gamma_terms = 0;  // number of independent Gamma(i,1) variables simulated
  std::vector<KostlanOrderCheck> checks;
};

// Compares the smallest squared moduli of sampled Ginibre patterns on
// b(O, radius) with a direct simulation of independent Gamma(i,1) variables
// (two-sample Kolmogorov-Smirnov). Requires radius^2 >= i + 6 sqrt(i) for
// every tested order i and n_reps > 0.
KostlanReport kostlan_validation(double radius, std::size_t n_reps, std::uint64_t seed,
                                 std::size_t max_order = 2, unsigned threads = 1,
                                 const SamplerOptions& opts = {});

}  // namespace ginibrenet
