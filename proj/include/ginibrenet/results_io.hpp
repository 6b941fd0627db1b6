#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ginibrenet/tail_estimation.hpp"

namespace ginibrenet {

struct EstimateRow {
  double x = 0.0;
  double eps = 1.0;
  std::string estimator;
  double p = 0.0;
  double stderr_ = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
  std::size_t n_reps = 0;
  std::uint64_t seed = 0;
};

EstimateRow make_row(double x, double eps, const TailEstimate& est, std::uint64_t seed);

// Columns x,eps,estimator,p,stderr,ci_lo,ci_hi,n_reps,seed; reals round-trip exactly.
void write_estimates_csv(std::ostream& out, const std::vector<EstimateRow>& rows);
std::vector<EstimateRow> read_estimates_csv(std::istream& in);

// Columns x,growth,log_p,predicted, preceded by '#' summary lines
// (fitted_slope, target_slope, relative_error, dropped points).
void write_slope_csv(std::ostream& out, const SlopeReport& report);

}  // namespace ginibrenet
