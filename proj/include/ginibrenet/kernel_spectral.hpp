#pragma once

// Exact spectral quantities for the Ginibre kernel K(x,y) = exp(x conj(y))
// (reference measure (1/pi) exp(-|x|^2) dx) restricted to disks.
//
// On b(O, r) the eigenfunctions are the monomials z^m, m >= 0, with
// eigenvalues P(Po(r^2) >= m+1). The reduced Palm kernel exp(x conj(y)) - 1
// drops z^0. Independent thinning with retention beta followed by scaling by
// sqrt(beta) maps a disk of radius r onto the Ginibre spectrum of radius
// r/sqrt(beta) multiplied by beta.

#include <cstdint>
#include <span>
#include <vector>

#include "ginibrenet/types.hpp"

namespace ginibrenet::spectral {

inline constexpr double kDefaultTolerance = 1e-12;

struct DiskRestriction {
  PlanarPoint center{0.0, 0.0};
  double radius = 1.0;
  // Drop the constant eigenfunction (reduced Palm kernel at the origin).
  bool palm_shift = false;
  double beta = 1.0;

  void validate() const;
  // Radius of the 1-Ginibre disk whose spectrum is used: radius / sqrt(beta).
  double scaled_radius() const;
};

struct EigenvalueSeq {
  std::vector<double> values;
  // 1 - values[m], evaluated without cancellation.
  std::vector<double> complements;
  double truncation_tol = kDefaultTolerance;
  // Index (in the returned sequence) of the first dropped eigenvalue.
  std::size_t truncation_index = 0;
};

// log P(Po(mean) >= n). Returns 0 for n <= 0 and -inf for mean == 0, n > 0.
double log_poisson_survival(std::int64_t n, double mean);
// log P(Po(mean) <= n). Returns -inf for n < 0.
double log_poisson_cdf(std::int64_t n, double mean);

// P(Po(radius^2) >= m+1), the m-th eigenvalue of the kernel on b(O, radius).
double disk_eigenvalue(std::size_t m, double radius);

// Hard cap on the number of eigenvalues kept for a disk of the given radius
// (radius already scaled by 1/sqrt(beta)).
std::size_t eigenvalue_cap(double scaled_radius);

EigenvalueSeq eigenvalues(const DiskRestriction& restriction, double tol = kDefaultTolerance);

// Sum of the eigenvalues: E[N] for the restricted (thinned) process.
double trace_bound(const DiskRestriction& restriction, double tol = kDefaultTolerance);

// log prod_m (1 + (e^theta - 1) kappa_m).
double log_laplace_bound(const DiskRestriction& restriction, double theta,
                         double tol = kDefaultTolerance);
double laplace_bound(const DiskRestriction& restriction, double theta,
                     double tol = kDefaultTolerance);

// Exact law P(N = k), k = 0..max_n, of the count as a sum of independent
// Bernoulli(kappa_m) variables over the truncated spectrum.
std::vector<double> count_distribution(const DiskRestriction& restriction, std::int64_t max_n,
                                       double tol = kDefaultTolerance);

// A Bernoulli trial given by log success and log failure probabilities.
struct LogBernoulli {
  double log_p;
  double log_q;
};

// log P(sum of independent Bernoulli trials >= m), evaluated in log space.
double log_poisson_binomial_survival(std::span<const LogBernoulli> trials, std::int64_t m);

// Log-space Bernoulli description of the spectrum, without tolerance
// truncation: indices 0..count-1. `extra_retention` multiplies every
// eigenvalue (an additional independent thinning).
std::vector<LogBernoulli> log_spectrum(const DiskRestriction& restriction, std::size_t count,
                                       double extra_retention = 1.0);

// Exact log P(N >= m) for the restricted process. Accurate far below the
// double-precision underflow threshold.
double log_count_survival(const DiskRestriction& restriction, std::int64_t m);

std::complex<double> ginibre_kernel(PlanarPoint x, PlanarPoint y);

// 1 - |K(x1,x2)|^2 / (K(x1,x1) K(x2,x2)) = 1 - exp(-|x1 - x2|^2).
double pair_correlation(PlanarPoint x1, PlanarPoint x2);

// det(K(x_i, x_j)), the k-point joint intensity with respect to the
// Gaussian reference measure. The empty determinant is 1; repeated points give 0.
double joint_intensity(std::span<const PlanarPoint> points);

}  // namespace ginibrenet::spectral
