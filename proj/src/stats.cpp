#include "ginibrenet/stats.hpp"

#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <stdexcept>

namespace ginibrenet::stats {

namespace {

struct Bin {
  double expected = 0.0;
  double observed = 0.0;
};

std::vector<Bin> merge_bins(const std::vector<Bin>& raw, double min_expected) {
  std::vector<Bin> merged;
  Bin acc;
  for (const auto& b : raw) {
    acc.expected += b.expected;
    acc.observed += b.observed;
    if (acc.expected >= min_expected) {
      merged.push_back(acc);
      acc = {};
    }
  }
  if (acc.expected > 0.0 || acc.observed > 0.0) {
    if (merged.empty())
      merged.push_back(acc);
    else {
      merged.back().expected += acc.expected;
      merged.back().observed += acc.observed;
    }
  }
  return merged;
}

double chi_square_p(double statistic, double dof) {
  if (dof < 1.0) return 1.0;
  boost::math::chi_squared dist(dof);
  return boost::math::cdf(boost::math::complement(dist, statistic));
}

}  // namespace

std::vector<std::size_t> histogram(std::span<const std::size_t> samples) {
  std::size_t top = 0;
  for (auto s : samples) top = std::max(top, s);
  std::vector<std::size_t> h(samples.empty() ? 0 : top + 1, 0);
  for (auto s : samples) ++h[s];
  return h;
}

TestResult chi_square_gof(std::span<const std::size_t> samples, std::span<const double> probs,
                          double min_expected) {
  if (samples.empty()) throw std::invalid_argument("chi-square test needs samples");
  const auto n = static_cast<double>(samples.size());
  const auto counts = histogram(samples);
  std::vector<Bin> raw(probs.size() + 1);
  double covered = 0.0;
  for (std::size_t k = 0; k < probs.size(); ++k) {
    raw[k].expected = n * probs[k];
    covered += probs[k];
  }
  raw.back().expected = n * std::max(0.0, 1.0 - covered);
  for (std::size_t k = 0; k < counts.size(); ++k)
    raw[std::min(k, probs.size())].observed += static_cast<double>(counts[k]);

  const auto bins = merge_bins(raw, min_expected);
  TestResult out;
  for (const auto& b : bins) {
    if (b.expected <= 0.0) {
      if (b.observed > 0.0) return {std::numeric_limits<double>::infinity(), 0.0, 0.0, bins.size()};
      continue;
    }
    const double d = b.observed - b.expected;
    out.statistic += d * d / b.expected;
  }
  out.bins = bins.size();
  out.dof = static_cast<double>(bins.size()) - 1.0;
  out.p_value = chi_square_p(out.statistic, out.dof);
  return out;
}

TestResult chi_square_two_sample(std::span<const std::size_t> a, std::span<const std::size_t> b,
                                 double min_expected) {
  if (a.empty() || b.empty()) throw std::invalid_argument("two-sample test needs two samples");
  const auto ha = histogram(a);
  const auto hb = histogram(b);
  const std::size_t width = std::max(ha.size(), hb.size());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double total = na + nb;
  const double smaller = std::min(na, nb) / total;

  // Merge columns so that each cell's expected count is at least min_expected.
  std::vector<std::pair<double, double>> cols;
  double ca = 0.0, cb = 0.0;
  for (std::size_t k = 0; k < width; ++k) {
    ca += k < ha.size() ? static_cast<double>(ha[k]) : 0.0;
    cb += k < hb.size() ? static_cast<double>(hb[k]) : 0.0;
    if ((ca + cb) * smaller >= min_expected) {
      cols.emplace_back(ca, cb);
      ca = cb = 0.0;
    }
  }
  if (ca + cb > 0.0) {
    if (cols.empty())
      cols.emplace_back(ca, cb);
    else {
      cols.back().first += ca;
      cols.back().second += cb;
    }
  }
  TestResult out;
  for (const auto& [oa, ob] : cols) {
    const double col = oa + ob;
    const double ea = col * na / total;
    const double eb = col * nb / total;
    out.statistic += (oa - ea) * (oa - ea) / ea + (ob - eb) * (ob - eb) / eb;
  }
  out.bins = cols.size();
  out.dof = static_cast<double>(cols.size()) - 1.0;
  out.p_value = chi_square_p(out.statistic, out.dof);
  return out;
}

double kolmogorov_survival(double lambda) {
  if (lambda <= 0.0) return 1.0;
  if (lambda < 0.2) return 1.0;
  double sum = 0.0;
  for (int k = 1; k <= 200; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += (k % 2 == 1 ? 2.0 : -2.0) * term;
    if (term < 1e-18) break;
  }
  return std::clamp(sum, 0.0, 1.0);
}

TestResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("KS test needs two samples");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double v = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == v) ++i;
    while (j < b.size() && b[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  const double ne = na * nb / (na + nb);
  const double root = std::sqrt(ne);
  TestResult out;
  out.statistic = d;
  out.p_value = kolmogorov_survival((root + 0.12 + 0.11 / root) * d);
  return out;
}

LinearFit linear_fit(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("linear fit needs two aligned series of length >= 2");
  const auto n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("linear fit needs distinct abscissae");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  if (x.size() > 2) {
    double sse = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double r = y[i] - fit.intercept - fit.slope * x[i];
      sse += r * r;
    }
    fit.slope_stderr = std::sqrt(sse / (n - 2.0) / sxx);
  }
  return fit;
}

double stable_sum(std::span<const double> values) {
  double sum = 0.0;
  double comp = 0.0;
  for (double v : values) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v))
      comp += (sum - t) + v;
    else
      comp += (v - t) + sum;
    sum = t;
  }
  return sum + comp;
}

Moments moments(std::span<const double> values) {
  Moments m;
  m.n = values.size();
  if (values.empty()) return m;
  m.mean = stable_sum(values) / static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0, comp = 0.0;
    for (double v : values) {
      const double d = v - m.mean;
      ss += d * d;
      comp += d;
    }
    const auto n = static_cast<double>(values.size());
    m.variance = (ss - comp * comp / n) / (n - 1.0);
  }
  return m;
}

}  // namespace ginibrenet::stats
