#include "ginibrenet/kernel_spectral.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

namespace ginibrenet::spectral {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

long double log_poisson_pmf(std::int64_t k, long double mean) {
  return static_cast<long double>(k) * std::log(mean) - mean -
         std::lgamma(static_cast<long double>(k) + 1.0L);
}

// Sum of pmf(k)/pmf(n) for k >= n, requires n > mean.
long double upper_series(std::int64_t n, long double mean) {
  long double sum = 1.0L;
  long double term = 1.0L;
  for (std::int64_t i = 1;; ++i) {
    term *= mean / static_cast<long double>(n + i);
    sum += term;
    if (term < 1e-22L * sum) break;
  }
  return sum;
}

// Sum of pmf(k)/pmf(n) for 0 <= k <= n, requires n < mean.
long double lower_series(std::int64_t n, long double mean) {
  long double sum = 1.0L;
  long double term = 1.0L;
  for (std::int64_t k = n; k > 0; --k) {
    term *= static_cast<long double>(k) / mean;
    sum += term;
    if (term < 1e-22L * sum) break;
  }
  return sum;
}

double log_add_exp(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

void check_radius(double radius) {
  if (!std::isfinite(radius) || radius <= 0.0)
    throw std::domain_error("disk radius must be finite and positive");
}

}  // namespace

void DiskRestriction::validate() const {
  check_radius(radius);
  if (!(beta > 0.0 && beta <= 1.0)) throw std::domain_error("beta must lie in (0, 1]");
}

double DiskRestriction::scaled_radius() const { return radius / std::sqrt(beta); }

double log_poisson_survival(std::int64_t n, double mean) {
  if (n <= 0) return 0.0;
  if (mean <= 0.0) return kNegInf;
  const long double lm = mean;
  if (static_cast<long double>(n) > lm)
    return static_cast<double>(log_poisson_pmf(n, lm) + std::log(upper_series(n, lm)));
  const long double cdf = std::exp(log_poisson_pmf(n - 1, lm)) * lower_series(n - 1, lm);
  return static_cast<double>(std::log1p(-std::min(cdf, 1.0L)));
}

double log_poisson_cdf(std::int64_t n, double mean) {
  if (n < 0) return kNegInf;
  if (mean <= 0.0) return 0.0;
  const long double lm = mean;
  if (static_cast<long double>(n) < lm)
    return static_cast<double>(log_poisson_pmf(n, lm) + std::log(lower_series(n, lm)));
  const long double sf = std::exp(static_cast<long double>(log_poisson_survival(n + 1, mean)));
  return static_cast<double>(std::log1p(-std::min(sf, 1.0L)));
}

double disk_eigenvalue(std::size_t m, double radius) {
  check_radius(radius);
  return std::exp(log_poisson_survival(static_cast<std::int64_t>(m) + 1, radius * radius));
}

std::size_t eigenvalue_cap(double scaled_radius) {
  return 10 * static_cast<std::size_t>(std::ceil(scaled_radius * scaled_radius)) + 64;
}

EigenvalueSeq eigenvalues(const DiskRestriction& restriction, double tol) {
  restriction.validate();
  if (!(tol > 0.0 && tol < 1.0)) throw std::domain_error("tolerance must lie in (0, 1)");
  const double r = restriction.scaled_radius();
  const double mean = r * r;
  const std::int64_t shift = restriction.palm_shift ? 1 : 0;
  const double beta = restriction.beta;
  const std::size_t cap = eigenvalue_cap(r);

  EigenvalueSeq seq;
  seq.truncation_tol = tol;
  for (std::size_t m = 0; m < cap; ++m) {
    const auto idx = static_cast<std::int64_t>(m) + shift;
    const double value = beta * std::exp(log_poisson_survival(idx + 1, mean));
    if (value < tol) break;
    const double cdf = std::exp(log_poisson_cdf(idx, mean));
    seq.values.push_back(value);
    seq.complements.push_back(beta == 1.0 ? cdf : (1.0 - beta) + beta * cdf);
  }
  seq.truncation_index = seq.values.size();
  return seq;
}

double trace_bound(const DiskRestriction& restriction, double tol) {
  const auto seq = eigenvalues(restriction, tol);
  long double sum = 0.0L;
  // Smallest first.
  for (auto it = seq.values.rbegin(); it != seq.values.rend(); ++it) sum += *it;
  return static_cast<double>(sum);
}

double log_laplace_bound(const DiskRestriction& restriction, double theta, double tol) {
  if (!(theta >= 0.0)) throw std::domain_error("theta must be nonnegative");
  const auto seq = eigenvalues(restriction, tol);
  const double growth = std::expm1(theta);
  long double sum = 0.0L;
  for (auto it = seq.values.rbegin(); it != seq.values.rend(); ++it)
    sum += std::log1p(growth * *it);
  return static_cast<double>(sum);
}

double laplace_bound(const DiskRestriction& restriction, double theta, double tol) {
  return std::exp(log_laplace_bound(restriction, theta, tol));
}

std::vector<double> count_distribution(const DiskRestriction& restriction, std::int64_t max_n,
                                       double tol) {
  if (max_n < 0) throw std::domain_error("max_n must be nonnegative");
  const auto seq = eigenvalues(restriction, tol);
  const auto size = static_cast<std::size_t>(max_n) + 1;
  std::vector<long double> pmf(size, 0.0L);
  pmf[0] = 1.0L;
  for (std::size_t j = 0; j < seq.values.size(); ++j) {
    const long double p = seq.values[j];
    const long double q = seq.complements[j];
    const std::size_t top = std::min(size - 1, j + 1);
    for (std::size_t k = top; k >= 1; --k) pmf[k] = pmf[k] * q + pmf[k - 1] * p;
    pmf[0] *= q;
  }
  return {pmf.begin(), pmf.end()};
}

double log_poisson_binomial_survival(std::span<const LogBernoulli> trials, std::int64_t m) {
  if (m <= 0) return 0.0;
  const auto states = static_cast<std::size_t>(m);
  // log P(N = k) for k < m, plus an absorbing state for N >= m.
  std::vector<double> below(states, kNegInf);
  below[0] = 0.0;
  double tail = kNegInf;
  for (const auto& t : trials) {
    tail = log_add_exp(tail, below[states - 1] + t.log_p);
    for (std::size_t k = states - 1; k >= 1; --k)
      below[k] = log_add_exp(below[k] + t.log_q, below[k - 1] + t.log_p);
    below[0] += t.log_q;
  }
  return tail;
}

std::vector<LogBernoulli> log_spectrum(const DiskRestriction& restriction, std::size_t count,
                                       double extra_retention) {
  restriction.validate();
  if (!(extra_retention > 0.0 && extra_retention <= 1.0))
    throw std::domain_error("retention must lie in (0, 1]");
  const double r = restriction.scaled_radius();
  const double mean = r * r;
  const std::int64_t shift = restriction.palm_shift ? 1 : 0;
  const double keep = restriction.beta * extra_retention;
  const double log_keep = std::log(keep);

  std::vector<LogBernoulli> out;
  out.reserve(count);
  for (std::size_t m = 0; m < count; ++m) {
    const auto idx = static_cast<std::int64_t>(m) + shift;
    const double log_p = log_keep + log_poisson_survival(idx + 1, mean);
    const double log_cdf = log_poisson_cdf(idx, mean);
    const double log_q =
        keep == 1.0 ? log_cdf : std::log((1.0 - keep) + keep * std::exp(log_cdf));
    out.push_back({log_p, log_q});
  }
  return out;
}

double log_count_survival(const DiskRestriction& restriction, std::int64_t m) {
  restriction.validate();
  if (m <= 0) return 0.0;
  const auto mm = static_cast<std::size_t>(m);
  const std::size_t count = std::max(eigenvalue_cap(restriction.scaled_radius()), mm + 64) + mm;
  const auto trials = log_spectrum(restriction, count);
  return log_poisson_binomial_survival(trials, m);
}

std::complex<double> ginibre_kernel(PlanarPoint x, PlanarPoint y) {
  return std::exp(x * std::conj(y));
}

double pair_correlation(PlanarPoint x1, PlanarPoint x2) {
  return -std::expm1(-std::norm(x1 - x2));
}

double joint_intensity(std::span<const PlanarPoint> points) {
  const auto k = static_cast<Eigen::Index>(points.size());
  if (k == 0) return 1.0;
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      if (points[i] == points[j]) return 0.0;
  Eigen::MatrixXcd gram(k, k);
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j < k; ++j)
      gram(i, j) = ginibre_kernel(points[static_cast<std::size_t>(i)],
                                  points[static_cast<std::size_t>(j)]);
  const double det = gram.fullPivLu().determinant().real();
  return std::max(det, 0.0);
}

}  // namespace ginibrenet::spectral
