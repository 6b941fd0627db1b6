#pragma once

#include <string>

#include "ginibrenet/fading.hpp"

namespace ginibrenet::ldp {

enum class RegimeKind { bounded, weibull_super, exponential, subexp_family };

std::string to_string(RegimeKind kind);
RegimeKind parse_regime_kind(const std::string& name);

// Large-deviation regime of eps * I_Lambda for a fading law and attenuation (R, alpha).
class LdpRegime {
 public:
  // Throws std::domain_error when the fading kind does not belong to the regime.
  LdpRegime(RegimeKind kind, FadingSpec fading, double R, double alpha);
  static LdpRegime from_fading(const FadingSpec& fading, double R, double alpha);

  RegimeKind kind() const { return kind_; }
  const FadingSpec& fading() const { return fading_; }
  double R() const { return R_; }
  double alpha() const { return alpha_; }
  // Weibull exponent; 0 for Pareto fading.
  double gamma() const;

 private:
  RegimeKind kind_;
  FadingSpec fading_;
  double R_;
  double alpha_;
};

// Good rate function I(x), x >= 0.
double rate(const LdpRegime& regime, double x);
// Speed v(eps), 0 < eps < 1.
double speed(const LdpRegime& regime, double eps);

// Growth function g(x) of the tail corollaries: log P(I >= x) ~ tail_constant * g(x).
//   bounded: x^2 log x; weibull_super: x^(2g/(g+1)) log^((g-1)/(g+1)) x;
//   exponential: x; subexp_family: log Fbar(x).
double growth(const LdpRegime& regime, double x);
double tail_constant(const LdpRegime& regime);
// Leading-order prediction of log P(I_Lambda >= x): tail_constant * growth(x).
double tail_asymptote(const LdpRegime& regime, double x);

// Limit constant of log P(I >= x) / poisson_growth(x) for a Poisson network
// with the same fading. Bounded and weibull_super only; the other regimes
// throw std::domain_error("insensitive regime: identical constants").
double poisson_comparison(const LdpRegime& regime);
// bounded: x log x; weibull_super: x log^((g-1)/g) x.
double poisson_growth(const LdpRegime& regime, double x);
// (speed, rate) pair of the Poisson-network LDP.
double poisson_speed(const LdpRegime& regime, double eps);
double poisson_rate(const LdpRegime& regime, double x);

struct ProofConstants {
  double kappa_opt = 0.0;
  long long block_n = 0;
  double gamma_prime = 0.0;
  double gamma_tilde = 0.0;
  double theta_tilt = 0.0;
};

// Constants of the Weibull lower-bound and Chernoff constructions.
// Requires the weibull_super regime and 0 < eps < min(1, x).
ProofConstants proof_constants(const LdpRegime& regime, double x, double eps);

}  // namespace ginibrenet::ldp
