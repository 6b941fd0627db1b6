#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <vector>

#include "ginibrenet/fading.hpp"
#include "ginibrenet/stats.hpp"

using namespace ginibrenet;

TEST_CASE("fading constructors reject invalid parameters") {
  CHECK_THROWS_AS(FadingSpec::bounded(0.0), std::domain_error);
  CHECK_THROWS_AS(FadingSpec::bounded(1.0, -1.0, 2.0), std::domain_error);
  CHECK_THROWS_AS(FadingSpec::weibull_super(1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(FadingSpec::weibull_sub(1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(FadingSpec::exponential(0.0), std::domain_error);
  CHECK_THROWS_AS(FadingSpec::pareto(-2.0), std::domain_error);
  CHECK_THROWS_AS(parse_fading_kind("rayleigh"), std::invalid_argument);
  for (auto k : {FadingKind::bounded, FadingKind::weibull_super, FadingKind::exponential,
                 FadingKind::weibull_sub, FadingKind::pareto})
    CHECK(parse_fading_kind(to_string(k)) == k);
}

TEST_CASE("survival functions") {
  CHECK(FadingSpec::exponential(2.0).survival(1.5) == doctest::Approx(std::exp(-3.0)).epsilon(1e-15));
  CHECK(FadingSpec::weibull_super(1.0, 2.0).survival(2.0) == doctest::Approx(std::exp(-4.0)).epsilon(1e-15));
  CHECK(FadingSpec::pareto(3.0).survival(1.0) == doctest::Approx(0.125).epsilon(1e-15));
  CHECK(FadingSpec::weibull_sub(1.0, 0.5).survival(4.0) == doctest::Approx(std::exp(-2.0)).epsilon(1e-15));
  const auto bounded = FadingSpec::bounded(2.0);
  CHECK(bounded.survival(2.0) == 0.0);
  CHECK(bounded.survival(0.0) == 1.0);
  // Beta(2,2): P(X > u) = 1 - 3u^2 + 2u^3.
  CHECK(bounded.survival(0.5) == doctest::Approx(1.0 - 3 * 0.0625 + 2 * 0.015625).epsilon(1e-14));
}

TEST_CASE("exponential draws have a log-survival slope of -c") {
  const auto spec = FadingSpec::exponential(1.0);
  RngStream rng(11, 0);
  const auto draws = sample_fading(spec, 1'000'000, rng);
  std::vector<double> xs, ys;
  for (double z = 0.5; z <= 8.0; z += 0.5) {
    std::size_t above = 0;
    for (double d : draws) above += d > z;
    xs.push_back(z);
    ys.push_back(std::log(static_cast<double>(above) / draws.size()));
  }
  const auto fit = stats::linear_fit(xs, ys);
  CHECK(std::abs(fit.slope + 1.0) < 0.05);
}

TEST_CASE("bounded draws approach but never exceed B") {
  const auto spec = FadingSpec::bounded(3.0);
  RngStream rng(12, 0);
  double top = 0.0;
  for (double d : sample_fading(spec, 100'000, rng)) {
    REQUIRE(d >= 0.0);
    REQUIRE(d <= 3.0);
    top = std::max(top, d);
  }
  CHECK(top > 0.99 * 3.0);
}

TEST_CASE("Weibull tail frequency within three standard errors") {
  const auto spec = FadingSpec::weibull_super(1.0, 2.0);
  RngStream rng(13, 0);
  const std::size_t n = 1'000'000;
  std::size_t hits = 0;
  for (double d : sample_fading(spec, n, rng)) hits += d > 2.0;
  const double p = std::exp(-4.0);
  const double se = std::sqrt(p * (1 - p) / n);
  CHECK(std::abs(static_cast<double>(hits) / n - p) < 3.0 * se);
}

TEST_CASE("sample means match closed forms") {
  for (const auto& spec : {FadingSpec::exponential(2.0), FadingSpec::bounded(2.0, 2.0, 3.0),
                           FadingSpec::weibull_super(1.0, 2.0), FadingSpec::pareto(4.0)}) {
    RngStream rng(14, 0);
    const auto m = stats::moments(sample_fading(spec, 400'000, rng));
    CHECK(std::abs(m.mean - spec.mean()) < 5.0 * std::sqrt(m.variance / m.n));
  }
  CHECK(FadingSpec::weibull_super(1.0, 2.0).mean() == doctest::Approx(std::sqrt(M_PI) / 2).epsilon(1e-14));
  CHECK(std::isinf(FadingSpec::pareto(1.0).mean()));
}

TEST_CASE("moment generating functions") {
  const auto exp2 = FadingSpec::exponential(2.0);
  CHECK(exp2.log_mgf(1.0) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
  CHECK(exp2.tilted_mean(1.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(exp2.log_mgf(2.0), MgfDivergence);
  CHECK_THROWS_AS(FadingSpec::pareto(3.0).log_mgf(1e-6), MgfDivergence);
  CHECK_THROWS_AS(FadingSpec::weibull_sub(1.0, 0.5).tilted_mean(1e-6), MgfDivergence);
  CHECK(FadingSpec::pareto(3.0).log_mgf(0.0) == 0.0);

  // Beta(2,2) scaled by B: E exp(sX) = 1F1(2;4;s) = 6(e^s(s-2)+s+2)/s^3, s = tB.
  const auto bounded = FadingSpec::bounded(2.0);
  for (double t : {0.05, 0.5, 2.0, 10.0}) {
    const double s = 2.0 * t;
    const double m = 6.0 * (std::exp(s) * (s - 2.0) + s + 2.0) / (s * s * s);
    CHECK(bounded.log_mgf(t) == doctest::Approx(std::log(m)).epsilon(1e-9));
  }

  using boost::math::quadrature::gauss_kronrod;
  const auto weibull = FadingSpec::weibull_super(1.0, 2.0);
  for (double t : {0.3, 1.0, 3.0}) {
    auto density = [&](double z) { return 2.0 * z * std::exp(-z * z + t * z); };
    auto first = [&](double z) { return z * density(z); };
    const double m0 = gauss_kronrod<double, 61>::integrate(density, 0.0, 40.0, 15, 1e-14);
    const double m1 = gauss_kronrod<double, 61>::integrate(first, 0.0, 40.0, 15, 1e-14);
    CHECK(weibull.log_mgf(t) == doctest::Approx(std::log(m0)).epsilon(1e-9));
    CHECK(weibull.tilted_mean(t) == doctest::Approx(m1 / m0).epsilon(1e-9));
  }
}

TEST_CASE("tilted sampling") {
  for (const auto& [spec, t] : std::vector<std::pair<FadingSpec, double>>{
           {FadingSpec::exponential(1.0), 0.5},
           {FadingSpec::weibull_super(1.0, 2.0), 2.0},
           {FadingSpec::bounded(2.0), 1.5}}) {
    RngStream rng(15, 0);
    std::vector<double> draws(200'000);
    for (auto& d : draws) d = spec.sample_tilted(t, rng);
    const auto m = stats::moments(draws);
    CHECK(std::abs(m.mean - spec.tilted_mean(t)) < 5.0 * std::sqrt(m.variance / m.n));

    RngStream a(16, 3), b(16, 3);
    for (int i = 0; i < 100; ++i) CHECK(spec.sample_tilted(0.0, a) == spec.sample(b));
  }
  RngStream rng(17, 0);
  CHECK_THROWS_AS(FadingSpec::bounded(1.0, 0.5, 2.0).sample_tilted(1.0, rng), std::domain_error);
  CHECK_THROWS_AS(FadingSpec::exponential(1.0).sample_tilted(1.0, rng), MgfDivergence);
}
