#include <doctest.h>

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <numeric>
#include <vector>

#include "ginibrenet/kernel_spectral.hpp"

using namespace ginibrenet;
using namespace ginibrenet::spectral;

namespace {

// 1 - sum_{k <= m} e^-l l^k / k!, by direct summation.
double pmf_survival(int m, double lambda) {
  double term = std::exp(-lambda), cdf = 0.0;
  for (int k = 0; k <= m; ++k) {
    cdf += term;
    term *= lambda / (k + 1);
  }
  return 1.0 - cdf;
}

DiskRestriction disk(double radius, double beta = 1.0, bool palm = false) {
  DiskRestriction d;
  d.radius = radius;
  d.beta = beta;
  d.palm_shift = palm;
  return d;
}

}  // namespace

TEST_CASE("disk eigenvalues match the Poisson pmf sum") {
  CHECK(disk_eigenvalue(0, 1.0) == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-14));
  CHECK(disk_eigenvalue(2, 1.0) == doctest::Approx(1.0 - 2.5 * std::exp(-1.0)).epsilon(1e-14));
  for (double r : {0.3, 1.0, 2.5})
    for (int m : {0, 1, 3, 7})
      CHECK(disk_eigenvalue(m, r) == doctest::Approx(pmf_survival(m, r * r)).epsilon(1e-12));
  CHECK(disk_eigenvalue(0, 1e-9) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(disk_eigenvalue(0, 1e-9) < 1e-17);
}

TEST_CASE("disk eigenvalues agree with the regularized incomplete gamma far in the tail") {
  for (int m : {30, 60, 120}) {
    const double want = boost::math::gamma_p(m + 1.0, 25.0);
    CHECK(disk_eigenvalue(m, 5.0) == doctest::Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("disk eigenvalue rejects bad radii") {
  CHECK_THROWS_AS(disk_eigenvalue(0, 0.0), std::domain_error);
  CHECK_THROWS_AS(disk_eigenvalue(0, -1.0), std::domain_error);
  CHECK_THROWS_AS(disk_eigenvalue(0, std::nan("")), std::domain_error);
  CHECK_THROWS_AS(disk_eigenvalue(0, INFINITY), std::domain_error);
}

TEST_CASE("eigenvalue sequences: sums, thinning and the Palm shift") {
  CHECK(trace_bound(disk(2.0)) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(std::abs(trace_bound(disk(2.0)) - 4.0) < 1e-9);
  CHECK(std::abs(trace_bound(disk(1.0, 1.0, true)) - std::exp(-1.0)) < 1e-9);
  CHECK(std::abs(trace_bound(disk(3.0)) - 9.0) < 1e-9);
  CHECK(trace_bound(disk(1e-8)) < 1e-15);

  const auto half = eigenvalues(disk(1.0, 0.5));
  CHECK(half.values[0] == doctest::Approx(0.5 * (1.0 - std::exp(-2.0))).epsilon(1e-14));
  // Thinning keeps the intensity: the trace is still r^2.
  CHECK(std::abs(trace_bound(disk(1.0, 0.5)) - 1.0) < 1e-9);

  for (double r : {0.5, 1.0, 2.0, 5.0}) {
    const auto seq = eigenvalues(disk(r));
    CHECK(std::abs(std::accumulate(seq.values.begin(), seq.values.end(), 0.0) - r * r) < 1e-9);
    for (std::size_t m = 1; m < seq.values.size(); ++m) CHECK(seq.values[m] < seq.values[m - 1]);
    CHECK(seq.values.back() >= seq.truncation_tol);
    for (std::size_t m = 0; m < seq.values.size(); ++m) {
      CHECK(seq.values[m] > 0.0);
      CHECK(seq.values[m] < 1.0);
      CHECK(seq.complements[m] == doctest::Approx(1.0 - seq.values[m]).epsilon(1e-12));
    }
  }
}

TEST_CASE("eigenvalue truncation stops at the tolerance") {
  const auto seq = eigenvalues(disk(2.0), 1e-6);
  CHECK(seq.values.back() >= 1e-6);
  CHECK(disk_eigenvalue(seq.values.size(), 2.0) < 1e-6);
  CHECK_THROWS_AS(eigenvalues(disk(2.0), 0.0), std::domain_error);
  CHECK_THROWS_AS(eigenvalues(disk(2.0), 1.0), std::domain_error);
  DiskRestriction bad = disk(1.0, 1.5);
  CHECK_THROWS_AS(eigenvalues(bad), std::domain_error);
}

TEST_CASE("Laplace bound") {
  CHECK(laplace_bound(disk(2.0), 0.0) == 1.0);
  CHECK_THROWS_AS(laplace_bound(disk(1.0), -0.1), std::domain_error);

  double product = 1.0;
  for (int m = 0; m < 200; ++m) {
    const double k = pmf_survival(m, 1.0);
    if (k < 1e-14) break;
    product *= 1.0 + (std::exp(1.0) - 1.0) * k;
  }
  CHECK(laplace_bound(disk(1.0), 1.0) == doctest::Approx(product).epsilon(1e-12));

  double previous = 1.0;
  for (double theta : {0.1, 0.5, 1.0, 2.0, 4.0}) {
    const double value = laplace_bound(disk(1.5, 0.7, true), theta);
    CHECK(value > previous);
    previous = value;
    CHECK(log_laplace_bound(disk(1.5), theta) <= std::expm1(theta) * trace_bound(disk(1.5)));
  }
}

TEST_CASE("count distribution is the Poisson-binomial law of the spectrum") {
  for (const auto& d : {disk(1.0), disk(2.0, 0.5), disk(1.5, 1.0, true)}) {
    const auto seq = eigenvalues(d);
    const auto law = count_distribution(d, 80);
    double total = 0.0, mean = 0.0, second = 0.0;
    for (std::size_t k = 0; k < law.size(); ++k) {
      total += law[k];
      mean += k * law[k];
      second += double(k) * k * law[k];
    }
    double var_oracle = 0.0;
    for (double k : seq.values) var_oracle += k * (1.0 - k);
    const double var = second - mean * mean;
    CHECK(total <= 1.0 + 1e-12);
    CHECK(total > 1.0 - 1e-10);
    CHECK(std::abs(mean - trace_bound(d)) < 1e-9);
    CHECK(std::abs(var - var_oracle) < 1e-9);
    CHECK(var < mean);
  }
  double p0 = 1.0;
  for (int m = 0; m < 100; ++m) p0 *= 1.0 - pmf_survival(m, 1.0);
  CHECK(count_distribution(disk(1.0), 5)[0] == doctest::Approx(p0).epsilon(1e-12));
  CHECK_THROWS_AS(count_distribution(disk(1.0), -1), std::domain_error);
}

TEST_CASE("log count survival matches the direct law and reaches deep tails") {
  const auto d = disk(1.5);
  const auto law = count_distribution(d, 120);
  for (int m : {1, 3, 6, 10}) {
    double tail = 0.0;
    for (std::size_t k = m; k < law.size(); ++k) tail += law[k];
    CHECK(std::exp(log_count_survival(d, m)) == doctest::Approx(tail).epsilon(1e-9));
  }
  // Far below the double-precision underflow threshold.
  const double deep = log_count_survival(disk(1.0), 40);
  CHECK(std::isfinite(deep));
  CHECK(deep < -1000.0);
  CHECK(log_count_survival(d, 0) == 0.0);
}

TEST_CASE("Poisson survival in log space") {
  CHECK(std::exp(log_poisson_survival(3, 2.0)) == doctest::Approx(pmf_survival(2, 2.0)).epsilon(1e-13));
  CHECK(log_poisson_survival(0, 2.0) == 0.0);
  CHECK(log_poisson_survival(1, 0.0) == -INFINITY);
  const double lq = boost::math::gamma_q(21.0, 1.0);
  CHECK(log_poisson_cdf(20, 1.0) == doctest::Approx(std::log(lq)).epsilon(1e-12));
  // P(Po(1) >= 200) underflows a double but not its logarithm.
  CHECK(log_poisson_survival(200, 1.0) == doctest::Approx(-1.0 - std::lgamma(201.0)).epsilon(1e-4));
}

TEST_CASE("pair correlation and joint intensities") {
  const PlanarPoint x{0.3, -1.2};
  CHECK(pair_correlation(x, x) == 0.0);
  CHECK(pair_correlation({0.0, 0.0}, {1.0, 0.0}) == doctest::Approx(1.0 - std::exp(-1.0)));
  CHECK(pair_correlation({0.0, 0.0}, {0.0, 40.0}) == 1.0);
  for (double d : {0.1, 0.7, 1.9}) {
    const PlanarPoint a{0.2, 0.1}, b = a + std::polar(d, 0.4);
    const double kaa = std::real(ginibre_kernel(a, a)), kbb = std::real(ginibre_kernel(b, b));
    const double kab = std::abs(ginibre_kernel(a, b));
    CHECK(pair_correlation(a, b) == doctest::Approx(1.0 - kab * kab / (kaa * kbb)).epsilon(1e-12));
    CHECK(pair_correlation(a, b) <= 1.0);
  }

  CHECK(joint_intensity(std::vector<PlanarPoint>{}) == 1.0);
  CHECK(joint_intensity(std::vector<PlanarPoint>{x}) == doctest::Approx(std::exp(std::norm(x))));
  CHECK(joint_intensity(std::vector<PlanarPoint>{x, x}) == 0.0);
  const double d = 0.8;
  const std::vector<PlanarPoint> pair{{0.0, 0.0}, {d, 0.0}};
  CHECK(joint_intensity(pair) ==
        doctest::Approx(std::exp(d * d) * (1.0 - std::exp(-d * d))).epsilon(1e-12));
  const std::vector<PlanarPoint> triple{{0.0, 0.0}, {0.5, 0.2}, {-0.4, 0.9}};
  CHECK(joint_intensity(triple) >= 0.0);
}
