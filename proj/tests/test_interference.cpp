#include <doctest.h>

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numeric>

#include "ginibrenet/chernoff.hpp"
#include "ginibrenet/interference.hpp"
#include "ginibrenet/tail_estimation.hpp"

using namespace ginibrenet;

namespace {

MarkedPattern marked(std::vector<PlanarPoint> points, std::vector<double> marks) {
  MarkedPattern m;
  m.pattern.points = std::move(points);
  m.marks = std::move(marks);
  return m;
}

}  // namespace

TEST_CASE("attenuation") {
  CHECK(attenuation({2.0, 0.0}, 1.0, 4.0) == 1.0 / 16.0);
  CHECK(attenuation({0.5, 0.0}, 1.0, 4.0) == 1.0);
  CHECK(attenuation({0.0, 0.0}, 2.0, 3.0) == 0.125);
  CHECK_THROWS_AS(attenuation({1.0, 0.0}, 1.0, 2.0), std::domain_error);
  CHECK_THROWS_AS(attenuation({1.0, 0.0}, 0.0, 4.0), std::domain_error);
}

TEST_CASE("interference of a fixed marked pattern") {
  const NetworkModel model;
  // Receiver at (0.5, 0); the last point lies outside b(O, 2).
  const auto m = marked({{1.5, 0.0}, {0.0, 0.5}, {-1.5, 0.0}, {0.5, 2.0}}, {2.0, 3.0, 4.0, 100.0});
  CHECK(interference(m, model) == doctest::Approx(5.25).epsilon(1e-15));
  CHECK(interference(marked({}, {}), model) == 0.0);
  CHECK_THROWS_AS(interference(marked({{0.0, 0.0}}, {}), model), std::invalid_argument);
  CHECK_THROWS_AS(interference(marked({{0.0, 0.0}}, {-1.0}), model), std::invalid_argument);

  CHECK(sinr(2.0, 1.0, model) == doctest::Approx(1.0));
  CHECK(success_threshold(2.0, model) == doctest::Approx(1.0));
  CHECK(weighted_sum(std::vector<double>{0.5, 0.25}, std::vector<double>{2.0, 4.0}) == 2.0);
  CHECK_THROWS_AS(weighted_sum(std::vector<double>{0.5}, std::vector<double>{}), std::invalid_argument);
}

TEST_CASE("interference is invariant under permutation, bit for bit") {
  NetworkModel model;
  model.window.radius = 4.0;
  RngStream rng(21, 0);
  auto p = sample_interferers(model, rng);
  REQUIRE(p.size() > 8);
  std::vector<double> marks;
  for (std::size_t i = 0; i < p.size(); ++i) marks.push_back(model.fading.sample(rng));
  const double base = interference(marked(p.points, marks), model);

  std::vector<std::size_t> order(p.size());
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 shuffler(4);
  for (int trial = 0; trial < 20; ++trial) {
    std::shuffle(order.begin(), order.end(), shuffler);
    std::vector<PlanarPoint> pts;
    std::vector<double> ms;
    for (auto i : order) {
      pts.push_back(p.points[i]);
      ms.push_back(marks[i]);
    }
    CHECK(interference(marked(pts, ms), model) == base);
  }
}

TEST_CASE("interference bounds and window monotonicity") {
  NetworkModel small;
  NetworkModel large = small;
  large.window.radius = 3.0;
  for (std::uint64_t i = 0; i < 200; ++i) {
    RngStream rng(22, i);
    const auto p = sample_interferers(large, rng);
    std::vector<double> marks;
    for (std::size_t k = 0; k < p.size(); ++k) marks.push_back(large.fading.sample(rng));
    const auto m = marked(p.points, marks);
    const double total = std::accumulate(marks.begin(), marks.end(), 0.0);
    const double i_large = interference(m, large);
    CHECK(i_large <= std::pow(large.atten_R, -large.atten_alpha) * total * (1 + 1e-12));
    CHECK(interference(m, small) <= i_large);
    for (const auto& z : p.points) CHECK(large.window.contains(z));
  }
}

TEST_CASE("model validation") {
  NetworkModel m;
  m.validate();
  m.atten_alpha = 2.0;
  CHECK_THROWS_AS(m.validate(), std::domain_error);
  m = NetworkModel{};
  m.beta = 1.2;
  CHECK_THROWS_AS(m.validate(), std::domain_error);
  m = NetworkModel{};
  m.receiver = {2.5, 0.0};
  CHECK_THROWS_AS(m.validate(), std::domain_error);
  m = NetworkModel{};
  m.window.center = {5.0, 0.0};
  CHECK_THROWS_AS(m.validate(), std::domain_error);
}

TEST_CASE("expected counts") {
  NetworkModel m;
  CHECK(mean_count(m) == doctest::Approx(4.0 + std::expm1(-4.0)).epsilon(1e-12));
  m.beta = 0.5;
  CHECK(mean_count(m) == doctest::Approx(4.0 + 0.5 * std::expm1(-8.0)).epsilon(1e-12));
  m.process = ProcessKind::ginibre;
  CHECK(mean_count(m) == doctest::Approx(4.0).epsilon(1e-12));
  m.process = ProcessKind::poisson;
  m.intensity = 2.0;
  CHECK(mean_count(m) == doctest::Approx(8.0 * M_PI).epsilon(1e-12));

  NetworkModel off;
  off.window = Disk{{0.5, 0.0}, 1.0};
  off.receiver = {1.0, 0.0};
  off.process = ProcessKind::ginibre;
  CHECK(mean_count(off) == doctest::Approx(1.0).epsilon(1e-9));
  off.process = ProcessKind::palm_beta_ginibre;
  // 1 - (1/pi) integral over the window of exp(-|x|^2), in polar coordinates about the centre.
  using boost::math::quadrature::gauss_kronrod;
  auto ring = [](double rho) {
    auto angular = [rho](double phi) { return std::exp(-std::norm(PlanarPoint{0.5, 0.0} + std::polar(rho, phi))); };
    return rho * gauss_kronrod<double, 61>::integrate(angular, 0.0, 2.0 * M_PI, 10, 1e-14);
  };
  const double gauss_mass = gauss_kronrod<double, 61>::integrate(ring, 0.0, 1.0, 10, 1e-14) / M_PI;
  CHECK(mean_count(off) == doctest::Approx(1.0 - gauss_mass).epsilon(1e-9));
}

TEST_CASE("Chernoff bound") {
  using namespace spectral;
  NetworkModel m;
  CHECK(log_chernoff_tail_bound(m, 3.0, 1.0, 0.0) == 0.0);
  CHECK(chernoff_tail_bound(m, 3.0, 1.0, 1e-14) == 1.0);
  CHECK_THROWS_AS(log_chernoff_tail_bound(m, 3.0, 1.0, 1.0), MgfDivergence);
  CHECK_THROWS_AS(log_chernoff_tail_bound(m, 3.0, 1.0, 2.5), MgfDivergence);
  CHECK_THROWS_AS(log_chernoff_tail_bound(m, 3.0, 0.0, 0.5), std::domain_error);

  // Exact spectral expression for the enclosing disk b(O, 2), Palm shift.
  const double theta = 0.4;
  double log_mgf = 0.0;
  for (double k : eigenvalues(enclosing_restriction(m)).values)
    log_mgf += std::log1p((1.0 / (1.0 - theta) - 1.0) * k);
  CHECK(log_chernoff_tail_bound(m, 3.0, 1.0, theta) ==
        doctest::Approx(-theta * 3.0 + log_mgf).epsilon(1e-12));

  const auto grid = geometric_grid(0.01, 50.0, 200);
  CHECK(grid.size() == 200);
  CHECK(grid.front() == doctest::Approx(0.01));
  CHECK(grid.back() == doctest::Approx(50.0));
  CHECK_THROWS_AS(geometric_grid(0.0, 1.0, 3), std::invalid_argument);

  NetworkModel larger = m;
  larger.window.radius = 3.0;
  for (double x : {3.0, 5.0}) {
    const auto best = minimize_chernoff(m, x, 1.0, grid);
    CHECK(best.bound <= 1.0);
    CHECK(best.theta < 1.0);
    CHECK(minimize_chernoff(larger, x, 1.0, grid).bound >= best.bound);
    const auto crude = estimate_interference_tail(m, x, 20'000, Estimator::crude, 23);
    CHECK(best.bound >= crude.probability - 3.0 * crude.std_error);
  }

  NetworkModel poisson = m;
  poisson.process = ProcessKind::poisson;
  const double mu = 4.0;
  CHECK(log_chernoff_tail_bound(poisson, 3.0, 1.0, 0.5) ==
        doctest::Approx(-1.5 + mu * (2.0 - 1.0)).epsilon(1e-12));
}
