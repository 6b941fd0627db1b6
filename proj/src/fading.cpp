#include "ginibrenet/fading.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

namespace ginibrenet {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require(bool ok, const char* what) {
  if (!ok) throw std::domain_error(what);
}

// Solves f(z) = 0 for z in [lo, hi] given a sign change.
double solve(const std::function<double(double)>& f, double lo, double hi) {
  boost::uintmax_t iters = 200;
  auto tol = boost::math::tools::eps_tolerance<double>(50);
  const auto [a, b] = boost::math::tools::toms748_solve(f, lo, hi, tol, iters);
  return 0.5 * (a + b);
}

// Exact rejection sampler for a log-concave density exp(h) on [lo, hi].
// The envelope is flat on [zl, zr], where h drops by one from its mode, and
// follows the tangent lines of h outside. Acceptance is at least 1/(e+1).
class LogConcaveSampler {
 public:
  LogConcaveSampler(std::function<double(double)> h, std::function<double(double)> dh, double lo,
                    double hi)
      : h_(std::move(h)), dh_(std::move(dh)), lo_(lo), hi_(hi) {
    locate_mode();
    h_mode_ = h_(mode_);
    const double level = h_mode_ - 1.0;
    auto below = [&](double z) { return h_(z) - level; };

    zl_ = lo_;
    if (mode_ > lo_ && !(h_(lo_) >= level)) {
      // Bracket with a point where h is finite but below the level.
      double a = lo_ + 0.5 * (mode_ - lo_);
      while (h_(a) >= level) a = lo_ + 0.5 * (a - lo_);
      zl_ = solve(below, a, mode_);
    }
    zr_ = hi_;
    if (mode_ < hi_) {
      double top = hi_;
      if (!std::isfinite(top)) {
        top = std::max(1.0, 2.0 * mode_);
        while (h_(top) >= level) top *= 2.0;
        zr_ = solve(below, mode_, top);
      } else if (!(h_(top) >= level)) {
        double b = mode_ + 0.5 * (hi_ - mode_);
        while (h_(b) >= level) b = hi_ - 0.5 * (hi_ - b);
        zr_ = solve(below, mode_, b);
      }
    }

    mass_mid_ = zr_ - zl_;
    if (zl_ > lo_) {
      slope_l_ = dh_(zl_);
      mass_l_ = std::exp(h_(zl_) - h_mode_) * -std::expm1(-slope_l_ * (zl_ - lo_)) / slope_l_;
    }
    if (zr_ < hi_) {
      slope_r_ = dh_(zr_);
      const double span = hi_ - zr_;
      const double frac = std::isfinite(span) ? -std::expm1(slope_r_ * span) : 1.0;
      mass_r_ = std::exp(h_(zr_) - h_mode_) * frac / -slope_r_;
    }
  }

  double operator()(RngStream& rng) const {
    const double total = mass_l_ + mass_mid_ + mass_r_;
    for (std::size_t tries = 0; tries < 1'000'000; ++tries) {
      const double pick = rng.uniform() * total;
      double z;
      double env;
      if (pick < mass_l_) {
        const double len = zl_ - lo_;
        const double e = -std::log1p(rng.uniform() * std::expm1(-slope_l_ * len)) / slope_l_;
        z = zl_ - e;
        env = h_(zl_) - h_mode_ - slope_l_ * e;
      } else if (pick < mass_l_ + mass_mid_) {
        z = zl_ + rng.uniform() * mass_mid_;
        env = 0.0;
      } else {
        const double span = hi_ - zr_;
        const double u = rng.uniform();
        const double e = std::isfinite(span)
                             ? std::log1p(u * std::expm1(slope_r_ * span)) / slope_r_
                             : std::log1p(-u) / slope_r_;
        z = zr_ + e;
        env = h_(zr_) - h_mode_ + slope_r_ * e;
      }
      if (z <= lo_ || z >= hi_) continue;
      if (std::log(rng.uniform_positive()) <= h_(z) - h_mode_ - env) return z;
    }
    throw SamplerStall("tilted fading sampler exceeded its proposal cap", 0, 1, 1'000'000);
  }

 private:
  void locate_mode() {
    const double probe_lo = lo_ + 1e-12 * std::max(1.0, std::abs(lo_));
    if (dh_(probe_lo) <= 0.0) {
      mode_ = lo_;
      return;
    }
    double top = hi_;
    if (std::isfinite(top)) {
      const double probe_hi = hi_ - 1e-12 * std::max(1.0, std::abs(hi_));
      if (dh_(probe_hi) >= 0.0) {
        mode_ = hi_;
        return;
      }
      mode_ = solve(dh_, probe_lo, probe_hi);
      return;
    }
    top = 1.0;
    while (dh_(top) > 0.0) top *= 2.0;
    mode_ = solve(dh_, probe_lo, top);
  }

  std::function<double(double)> h_;
  std::function<double(double)> dh_;
  double lo_;
  double hi_;
  double mode_ = 0.0;
  double h_mode_ = 0.0;
  double zl_ = 0.0;
  double zr_ = 0.0;
  double slope_l_ = 0.0;
  double slope_r_ = 0.0;
  double mass_l_ = 0.0;
  double mass_mid_ = 0.0;
  double mass_r_ = 0.0;
};

double xlogy(double x, double y) { return x == 0.0 ? 0.0 : x * std::log(y); }

// log of integral_0^inf (1 + t z)^power exp(t z - c z^gamma) dz, gamma > 1.
double log_weibull_tilt_integral(double t, double c, double gamma, int power) {
  const double peak = std::pow(t / (c * gamma), 1.0 / (gamma - 1.0));
  auto g = [&](double z) { return t * z - c * std::pow(z, gamma); };
  const double g_peak = g(peak);
  const double curvature = c * gamma * (gamma - 1.0) * std::pow(peak, gamma - 2.0);
  double width = 1.0 / std::sqrt(curvature);
  if (!std::isfinite(width) || width <= 0.0) width = std::max(peak, 1e-3);
  auto integrand = [&](double z) {
    return (power == 0 ? 1.0 : 1.0 + t * z) * std::exp(g(z) - g_peak);
  };
  using boost::math::quadrature::gauss_kronrod;
  const double right = gauss_kronrod<double, 61>::integrate(
      [&](double v) { return width * integrand(peak + width * v); }, 0.0, kInf, 15, 1e-13);
  double left = 0.0;
  if (peak > 0.0)
    left = gauss_kronrod<double, 61>::integrate(
        [&](double v) { return width * integrand(peak - width * v); }, 0.0, peak / width, 15,
        1e-13);
  return g_peak + std::log(left + right);
}

// log E[exp(s (X - 1)) X^power] for X ~ Beta(a, b).
double log_beta_tilt_moment(double s, double a, double b, int power) {
  boost::math::quadrature::tanh_sinh<double> integrator;
  auto f = [&](double x, double xc) {
    // xc = 1 - x, supplied accurately near the right endpoint.
    const double one_minus = xc > 0.0 ? xc : 1.0 - x;
    return std::exp(-s * one_minus + xlogy(a - 1.0, x) + xlogy(b - 1.0, one_minus)) *
           (power == 0 ? 1.0 : x);
  };
  const double integral = integrator.integrate(f, 0.0, 1.0);
  return std::log(integral) - std::log(boost::math::beta(a, b));
}

}  // namespace

std::string to_string(FadingKind kind) {
  switch (kind) {
    case FadingKind::bounded: return "bounded";
    case FadingKind::weibull_super: return "weibull_super";
    case FadingKind::exponential: return "exponential";
    case FadingKind::weibull_sub: return "weibull_sub";
    case FadingKind::pareto: return "pareto";
  }
  return "unknown";
}

FadingKind parse_fading_kind(const std::string& name) {
  if (name == "bounded") return FadingKind::bounded;
  if (name == "weibull_super" || name == "weibull-super") return FadingKind::weibull_super;
  if (name == "exponential") return FadingKind::exponential;
  if (name == "weibull_sub" || name == "weibull-sub") return FadingKind::weibull_sub;
  if (name == "pareto") return FadingKind::pareto;
  throw std::invalid_argument("unknown fading kind '" + name + "'");
}

FadingSpec FadingSpec::bounded(double B, double a, double b) {
  require(std::isfinite(B) && B > 0.0, "bounded fading needs B > 0");
  require(std::isfinite(a) && a > 0.0 && std::isfinite(b) && b > 0.0,
          "bounded fading needs Beta shapes a, b > 0");
  return {FadingKind::bounded, B, a, b, 0.0, 0.0};
}

FadingSpec FadingSpec::weibull_super(double c, double gamma) {
  require(std::isfinite(c) && c > 0.0, "weibull_super fading needs c > 0");
  require(std::isfinite(gamma) && gamma > 1.0, "weibull_super fading needs gamma > 1");
  return {FadingKind::weibull_super, 0.0, 0.0, 0.0, c, gamma};
}

FadingSpec FadingSpec::exponential(double c) {
  require(std::isfinite(c) && c > 0.0, "exponential fading needs c > 0");
  return {FadingKind::exponential, 0.0, 0.0, 0.0, c, 1.0};
}

FadingSpec FadingSpec::weibull_sub(double c, double gamma) {
  require(std::isfinite(c) && c > 0.0, "weibull_sub fading needs c > 0");
  require(gamma > 0.0 && gamma < 1.0, "weibull_sub fading needs 0 < gamma < 1");
  return {FadingKind::weibull_sub, 0.0, 0.0, 0.0, c, gamma};
}

FadingSpec FadingSpec::pareto(double c) {
  require(std::isfinite(c) && c > 0.0, "pareto fading needs c > 0");
  return {FadingKind::pareto, 0.0, 0.0, 0.0, c, 0.0};
}

double FadingSpec::log_survival(double z) const {
  if (z <= 0.0) return 0.0;
  switch (kind_) {
    case FadingKind::bounded: {
      if (z >= B_) return -kInf;
      return std::log(boost::math::ibetac(a_, b_, z / B_));
    }
    case FadingKind::weibull_super:
    case FadingKind::weibull_sub: return -c_ * std::pow(z, gamma_);
    case FadingKind::exponential: return -c_ * z;
    case FadingKind::pareto: return -c_ * std::log1p(z);
  }
  return 0.0;
}

double FadingSpec::survival(double z) const { return std::exp(log_survival(z)); }

double FadingSpec::mean() const {
  switch (kind_) {
    case FadingKind::bounded: return B_ * a_ / (a_ + b_);
    case FadingKind::weibull_super:
    case FadingKind::weibull_sub: return std::pow(c_, -1.0 / gamma_) * std::tgamma(1.0 + 1.0 / gamma_);
    case FadingKind::exponential: return 1.0 / c_;
    case FadingKind::pareto: return c_ > 1.0 ? 1.0 / (c_ - 1.0) : kInf;
  }
  return kInf;
}

double FadingSpec::sample(RngStream& rng) const {
  switch (kind_) {
    case FadingKind::bounded: {
      const double x = rng.gamma(a_);
      const double y = rng.gamma(b_);
      return B_ * x / (x + y);
    }
    case FadingKind::weibull_super:
    case FadingKind::weibull_sub:
      return std::pow(-std::log(rng.uniform_positive()) / c_, 1.0 / gamma_);
    case FadingKind::exponential: return -std::log(rng.uniform_positive()) / c_;
    case FadingKind::pareto: return std::pow(rng.uniform_positive(), -1.0 / c_) - 1.0;
  }
  return 0.0;
}

double FadingSpec::mgf_abscissa() const {
  switch (kind_) {
    case FadingKind::bounded:
    case FadingKind::weibull_super: return kInf;
    case FadingKind::exponential: return c_;
    case FadingKind::weibull_sub:
    case FadingKind::pareto: return 0.0;
  }
  return 0.0;
}

double FadingSpec::log_mgf(double t) const {
  if (!(t >= 0.0)) throw std::domain_error("log_mgf is evaluated at nonnegative arguments only");
  if (t == 0.0) return 0.0;
  if (!(t < mgf_abscissa()))
    throw MgfDivergence("MGF divergence: E[exp(tZ)] is infinite for " + describe() +
                        " at t = " + std::to_string(t));
  switch (kind_) {
    case FadingKind::exponential: return -std::log1p(-t / c_);
    case FadingKind::weibull_super: {
      // M(t) = 1 + t * integral exp(t z) P(Z > z) dz
      const double log_tail = std::log(t) + log_weibull_tilt_integral(t, c_, gamma_, 0);
      return log_tail > 0.0 ? log_tail + std::log1p(std::exp(-log_tail)) : std::log1p(std::exp(log_tail));
    }
    case FadingKind::bounded: {
      const double s = t * B_;
      return s + log_beta_tilt_moment(s, a_, b_, 0);
    }
    default: break;
  }
  throw MgfDivergence("MGF divergence for " + describe());
}

double FadingSpec::tilted_mean(double t) const {
  if (t == 0.0) return mean();
  if (!(t > 0.0 && t < mgf_abscissa()))
    throw MgfDivergence("MGF divergence: tilted law undefined for " + describe() +
                        " at t = " + std::to_string(t));
  switch (kind_) {
    case FadingKind::exponential: return 1.0 / (c_ - t);
    case FadingKind::weibull_super: {
      // M'(t) = integral (1 + t z) exp(t z) P(Z > z) dz
      const double log_deriv = log_weibull_tilt_integral(t, c_, gamma_, 1);
      return std::exp(log_deriv - log_mgf(t));
    }
    case FadingKind::bounded: {
      const double s = t * B_;
      return B_ * std::exp(log_beta_tilt_moment(s, a_, b_, 1) - log_beta_tilt_moment(s, a_, b_, 0));
    }
    default: break;
  }
  throw MgfDivergence("MGF divergence for " + describe());
}

double FadingSpec::sample_tilted(double t, RngStream& rng) const {
  if (t == 0.0) return sample(rng);
  if (!(t > 0.0 && t < mgf_abscissa()))
    throw MgfDivergence("MGF divergence: cannot tilt " + describe() + " by t = " +
                        std::to_string(t));
  switch (kind_) {
    case FadingKind::exponential: return -std::log(rng.uniform_positive()) / (c_ - t);
    case FadingKind::weibull_super: {
      const double c = c_, g = gamma_;
      LogConcaveSampler sampler(
          [=](double z) { return (g - 1.0) * std::log(z) - c * std::pow(z, g) + t * z; },
          [=](double z) { return (g - 1.0) / z - c * g * std::pow(z, g - 1.0) + t; }, 0.0, kInf);
      return sampler(rng);
    }
    case FadingKind::bounded: {
      if (a_ < 1.0 || b_ < 1.0)
        throw std::domain_error("tilted bounded fading needs Beta shapes a, b >= 1");
      const double a = a_, b = b_, s = t * B_;
      LogConcaveSampler sampler(
          [=](double x) { return xlogy(a - 1.0, x) + xlogy(b - 1.0, 1.0 - x) + s * x; },
          [=](double x) {
            return (a == 1.0 ? 0.0 : (a - 1.0) / x) - (b == 1.0 ? 0.0 : (b - 1.0) / (1.0 - x)) + s;
          },
          0.0, 1.0);
      return B_ * sampler(rng);
    }
    default: break;
  }
  throw MgfDivergence("MGF divergence for " + describe());
}

std::string FadingSpec::describe() const {
  std::ostringstream os;
  os << to_string(kind_) << '(';
  switch (kind_) {
    case FadingKind::bounded: os << "B=" << B_ << ", a=" << a_ << ", b=" << b_; break;
    case FadingKind::weibull_super:
    case FadingKind::weibull_sub: os << "c=" << c_ << ", gamma=" << gamma_; break;
    case FadingKind::exponential:
    case FadingKind::pareto: os << "c=" << c_; break;
  }
  os << ')';
  return os.str();
}

std::vector<double> sample_fading(const FadingSpec& spec, std::size_t n, RngStream& rng) {
  std::vector<double> out(n);
  for (auto& z : out) z = spec.sample(rng);
  return out;
}

}  // namespace ginibrenet
