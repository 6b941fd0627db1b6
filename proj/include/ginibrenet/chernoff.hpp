#pragma once

#include <span>
#include <vector>

#include "ginibrenet/interference.hpp"
#include "ginibrenet/kernel_spectral.hpp"

namespace ginibrenet::spectral {

// Spectral restriction describing the count on the enclosing disk
// b(O, |center| + radius) for the model's process (Palm shift for the
// reduced Palm process, thinning level beta).
DiskRestriction enclosing_restriction(const NetworkModel& model);

// log of exp(-theta x) E[exp(theta eps R^-alpha sum_{Lambda} Z_i)], bounded
// through the exact count spectrum of the enclosing disk (Poisson mean for
// the Poisson process). Upper-bounds log P(eps I_Lambda >= x).
// Throws MgfDivergence when theta eps R^-alpha is beyond the fading MGF abscissa.
double log_chernoff_tail_bound(const NetworkModel& model, double x, double eps, double theta);
// min(1, exp(log_chernoff_tail_bound)).
double chernoff_tail_bound(const NetworkModel& model, double x, double eps, double theta);

struct ChernoffMinimum {
  double theta = 0.0;
  double bound = 1.0;
};

// Minimizes the bound over the grid, skipping values where the MGF diverges.
ChernoffMinimum minimize_chernoff(const NetworkModel& model, double x, double eps,
                                  std::span<const double> theta_grid);

// n points geometrically spaced on [lo, hi].
std::vector<double> geometric_grid(double lo, double hi, std::size_t n);

}  // namespace ginibrenet::spectral
