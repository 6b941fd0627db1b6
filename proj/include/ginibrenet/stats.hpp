#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace ginibrenet::stats {

struct TestResult {
  double statistic = 0.0;
  double dof = 0.0;
  double p_value = 1.0;
  std::size_t bins = 0;
};

// histogram[k] = number of samples equal to k.
std::vector<std::size_t> histogram(std::span<const std::size_t> samples);

// Pearson goodness of fit of integer samples against P(N = k), k < probs.size();
// leftover mass is pooled into a tail bin. Adjacent bins are merged until each
// expected count reaches min_expected.
TestResult chi_square_gof(std::span<const std::size_t> samples, std::span<const double> probs,
                          double min_expected = 5.0);

// Two-sample chi-square homogeneity test on integer samples.
TestResult chi_square_two_sample(std::span<const std::size_t> a, std::span<const std::size_t> b,
                                 double min_expected = 5.0);

// Two-sample Kolmogorov-Smirnov test, asymptotic p-value with Stephens' correction.
TestResult ks_two_sample(std::vector<double> a, std::vector<double> b);

// P(K > lambda) for the Kolmogorov distribution.
double kolmogorov_survival(double lambda);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
};

LinearFit linear_fit(std::span<const double> x, std::span<const double> y);

// Compensated (Neumaier) summation.
double stable_sum(std::span<const double> values);

struct Moments {
  double mean = 0.0;
  double variance = 0.0;  // unbiased sample variance
  std::size_t n = 0;
};

Moments moments(std::span<const double> values);

}  // namespace ginibrenet::stats
