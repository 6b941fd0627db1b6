#include "ginibrenet/ldp_rates.hpp"

#include <cmath>
#include <stdexcept>

namespace ginibrenet::ldp {

std::string to_string(RegimeKind kind) {
  switch (kind) {
    case RegimeKind::bounded: return "bounded";
    case RegimeKind::weibull_super: return "weibull_super";
    case RegimeKind::exponential: return "exponential";
    case RegimeKind::subexp_family: return "subexp_family";
  }
  return "unknown";
}

RegimeKind parse_regime_kind(const std::string& name) {
  if (name == "bounded") return RegimeKind::bounded;
  if (name == "weibull_super" || name == "weibull-super") return RegimeKind::weibull_super;
  if (name == "exponential") return RegimeKind::exponential;
  if (name == "subexp_family" || name == "subexp-family" || name == "subexp")
    return RegimeKind::subexp_family;
  throw std::invalid_argument("unknown regime '" + name + "'");
}

namespace {

bool compatible(RegimeKind kind, FadingKind fading) {
  switch (kind) {
    case RegimeKind::bounded: return fading == FadingKind::bounded;
    case RegimeKind::weibull_super: return fading == FadingKind::weibull_super;
    case RegimeKind::exponential: return fading == FadingKind::exponential;
    case RegimeKind::subexp_family:
      return fading == FadingKind::weibull_sub || fading == FadingKind::pareto;
  }
  return false;
}

void check_eps(double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw std::domain_error("speed requires 0 < eps < 1");
}

}  // namespace

LdpRegime::LdpRegime(RegimeKind kind, FadingSpec fading, double R, double alpha)
    : kind_(kind), fading_(fading), R_(R), alpha_(alpha) {
  if (!(R > 0.0) || !std::isfinite(R)) throw std::domain_error("R must be positive");
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw std::domain_error("alpha must be positive");
  if (!compatible(kind, fading.kind()))
    throw std::domain_error("regime " + to_string(kind) + " is incompatible with " +
                            ginibrenet::to_string(fading.kind()) + " fading");
}

LdpRegime LdpRegime::from_fading(const FadingSpec& fading, double R, double alpha) {
  switch (fading.kind()) {
    case FadingKind::bounded: return {RegimeKind::bounded, fading, R, alpha};
    case FadingKind::weibull_super: return {RegimeKind::weibull_super, fading, R, alpha};
    case FadingKind::exponential: return {RegimeKind::exponential, fading, R, alpha};
    case FadingKind::weibull_sub:
    case FadingKind::pareto: return {RegimeKind::subexp_family, fading, R, alpha};
  }
  throw std::domain_error("unknown fading kind");
}

double LdpRegime::gamma() const {
  switch (fading_.kind()) {
    case FadingKind::weibull_super:
    case FadingKind::weibull_sub: return fading_.gamma();
    case FadingKind::exponential: return 1.0;
    default: return 0.0;
  }
}

double rate(const LdpRegime& regime, double x) {
  if (!(x >= 0.0)) throw std::domain_error("rate requires x >= 0");
  const double Ra = std::pow(regime.R(), regime.alpha());
  const auto& f = regime.fading();
  switch (regime.kind()) {
    case RegimeKind::bounded:
      return Ra * Ra * x * x / (2.0 * f.B() * f.B());
    case RegimeKind::weibull_super: {
      const double g = f.gamma();
      const double c = f.c();
      return 0.5 * std::pow(regime.R(), 2.0 * regime.alpha() * g / (g + 1.0)) *
             std::pow(g / (g - 1.0), (g - 1.0) / (g + 1.0)) *
             std::pow(c * (g + 1.0), 2.0 / (g + 1.0)) * std::pow(x, 2.0 * g / (g + 1.0));
    }
    case RegimeKind::exponential:
      return f.c() * Ra * x;
    case RegimeKind::subexp_family:
      if (x == 0.0) return 0.0;
      return std::pow(Ra, regime.gamma()) * std::pow(x, regime.gamma());
  }
  return 0.0;
}

double speed(const LdpRegime& regime, double eps) {
  check_eps(eps);
  const double l = std::log(1.0 / eps);
  switch (regime.kind()) {
    case RegimeKind::bounded: return l / (eps * eps);
    case RegimeKind::weibull_super: {
      const double g = regime.fading().gamma();
      return std::pow(eps, -2.0 * g / (g + 1.0)) * std::pow(l, (g - 1.0) / (g + 1.0));
    }
    case RegimeKind::exponential: return 1.0 / eps;
    case RegimeKind::subexp_family: return -regime.fading().log_survival(1.0 / eps);
  }
  return 0.0;
}

double growth(const LdpRegime& regime, double x) {
  if (!(x > 0.0)) throw std::domain_error("growth requires x > 0");
  switch (regime.kind()) {
    case RegimeKind::bounded: return x * x * std::log(x);
    case RegimeKind::weibull_super: {
      if (x < 1.0) throw std::domain_error("weibull growth requires x >= 1");
      const double g = regime.fading().gamma();
      return std::pow(x, 2.0 * g / (g + 1.0)) * std::pow(std::log(x), (g - 1.0) / (g + 1.0));
    }
    case RegimeKind::exponential: return x;
    case RegimeKind::subexp_family: return regime.fading().log_survival(x);
  }
  return 0.0;
}

double tail_constant(const LdpRegime& regime) {
  switch (regime.kind()) {
    case RegimeKind::subexp_family:
      return std::pow(std::pow(regime.R(), regime.alpha()), regime.gamma());
    default:
      return -rate(regime, 1.0);
  }
}

double tail_asymptote(const LdpRegime& regime, double x) {
  return tail_constant(regime) * growth(regime, x);
}

double poisson_comparison(const LdpRegime& regime) {
  const double Ra = std::pow(regime.R(), regime.alpha());
  const auto& f = regime.fading();
  switch (regime.kind()) {
    case RegimeKind::bounded: return -Ra / f.B();
    case RegimeKind::weibull_super: {
      const double g = f.gamma();
      return -g * std::pow(g - 1.0, -(g - 1.0) / g) * std::pow(f.c(), 1.0 / g) * Ra;
    }
    default:
      throw std::domain_error("insensitive regime: identical constants");
  }
}

double poisson_growth(const LdpRegime& regime, double x) {
  if (!(x >= 1.0)) throw std::domain_error("Poisson growth requires x >= 1");
  switch (regime.kind()) {
    case RegimeKind::bounded: return x * std::log(x);
    case RegimeKind::weibull_super: {
      const double g = regime.fading().gamma();
      return x * std::pow(std::log(x), (g - 1.0) / g);
    }
    default:
      throw std::domain_error("insensitive regime: identical constants");
  }
}

double poisson_speed(const LdpRegime& regime, double eps) {
  check_eps(eps);
  const double l = std::log(1.0 / eps);
  switch (regime.kind()) {
    case RegimeKind::bounded: return l / eps;
    case RegimeKind::weibull_super: {
      const double g = regime.fading().gamma();
      return std::pow(l, 1.0 - 1.0 / g) / eps;
    }
    default:
      throw std::domain_error("insensitive regime: identical constants");
  }
}

double poisson_rate(const LdpRegime& regime, double x) {
  if (!(x >= 0.0)) throw std::domain_error("rate requires x >= 0");
  const double Ra = std::pow(regime.R(), regime.alpha());
  const auto& f = regime.fading();
  switch (regime.kind()) {
    case RegimeKind::bounded: return Ra * x / f.B();
    case RegimeKind::weibull_super: {
      const double g = f.gamma();
      return g * std::pow(g - 1.0, 1.0 / g - 1.0) * std::pow(f.c(), 1.0 / g) * Ra * x;
    }
    default:
      throw std::domain_error("insensitive regime: identical constants");
  }
}

ProofConstants proof_constants(const LdpRegime& regime, double x, double eps) {
  if (regime.kind() != RegimeKind::weibull_super)
    throw std::domain_error("proof constants are defined for the weibull_super regime");
  if (!(eps > 0.0 && eps < std::min(1.0, x)))
    throw std::domain_error("proof constants require 0 < eps < min(1, x)");
  const double g = regime.fading().gamma();
  const double c = regime.fading().c();
  const double Ra = std::pow(regime.R(), regime.alpha());
  ProofConstants pc;
  pc.kappa_opt = std::pow(c * (g * g - 1.0) * std::pow(Ra * x, g) / g, 1.0 / (g + 1.0));
  const double denom =
      std::pow(eps, g / (g + 1.0)) * std::pow(std::log(1.0 / eps), 1.0 / (g + 1.0));
  pc.block_n = static_cast<long long>(std::floor(pc.kappa_opt / denom));
  pc.gamma_prime = (g - 1.0) * std::pow(g, -g / (g - 1.0)) * std::pow(c, -1.0 / (g - 1.0));
  pc.gamma_tilde = 0.5 * std::pow(Ra * g / (g - 1.0), (g - 1.0) / (g + 1.0)) *
                   std::pow(c * (g + 1.0), 2.0 / (g + 1.0));
  const double ratio = x / eps;
  pc.theta_tilt =
      (Ra * pc.gamma_tilde / eps) * std::pow(ratio * std::log(ratio), (g - 1.0) / (g + 1.0));
  return pc;
}

}  // namespace ginibrenet::ldp
