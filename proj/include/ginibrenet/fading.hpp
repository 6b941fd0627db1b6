#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ginibrenet/rng.hpp"
#include "ginibrenet/types.hpp"

namespace ginibrenet {

enum class FadingKind { bounded, weibull_super, exponential, weibull_sub, pareto };

std::string to_string(FadingKind kind);
FadingKind parse_fading_kind(const std::string& name);

// Law of the fading marks Z_i.
//   bounded:        B * Beta(a, b), essential supremum B
//   weibull_super:  P(Z > z) = exp(-c z^gamma), gamma > 1
//   exponential:    P(Z > z) = exp(-c z)
//   weibull_sub:    P(Z > z) = exp(-c z^gamma), 0 < gamma < 1
//   pareto:         P(Z > z) = (1 + z)^(-c)
class FadingSpec {
 public:
  FadingSpec() : FadingSpec(exponential(1.0)) {}

  static FadingSpec bounded(double B, double a = 2.0, double b = 2.0);
  static FadingSpec weibull_super(double c, double gamma);
  static FadingSpec exponential(double c);
  static FadingSpec weibull_sub(double c, double gamma);
  static FadingSpec pareto(double c);

  FadingKind kind() const { return kind_; }
  double B() const { return B_; }
  double shape_a() const { return a_; }
  double shape_b() const { return b_; }
  double c() const { return c_; }
  double gamma() const { return gamma_; }

  double survival(double z) const;
  double log_survival(double z) const;
  double mean() const;

  double sample(RngStream& rng) const;

  // Supremum of {t : E[exp(tZ)] < inf}; +inf for bounded and weibull_super.
  double mgf_abscissa() const;
  // log E[exp(tZ)]; throws MgfDivergence when infinite.
  double log_mgf(double t) const;
  // Mean of the exponentially tilted law dQ/dP = exp(tZ)/E[exp(tZ)].
  double tilted_mean(double t) const;
  // Draw from the tilted law. At t == 0 this consumes the stream exactly like sample().
  double sample_tilted(double t, RngStream& rng) const;

  std::string describe() const;

 private:
  FadingSpec(FadingKind kind, double B, double a, double b, double c, double gamma)
      : kind_(kind), B_(B), a_(a), b_(b), c_(c), gamma_(gamma) {}

  FadingKind kind_;
  double B_ = 0.0;
  double a_ = 0.0;
  double b_ = 0.0;
  double c_ = 0.0;
  double gamma_ = 0.0;
};

std::vector<double> sample_fading(const FadingSpec& spec, std::size_t n, RngStream& rng);

}  // namespace ginibrenet
