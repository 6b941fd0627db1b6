#include "ginibrenet/results_io.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "ginibrenet/pattern_io.hpp"

namespace ginibrenet {

namespace {
constexpr const char* kHeader = "x,eps,estimator,p,stderr,ci_lo,ci_hi,n_reps,seed";
}

EstimateRow make_row(double x, double eps, const TailEstimate& est, std::uint64_t seed) {
  EstimateRow row;
  row.x = x;
  row.eps = eps;
  row.estimator = to_string(est.estimator);
  row.p = est.probability;
  row.stderr_ = est.std_error;
  row.ci_lo = est.ci_lo;
  row.ci_hi = est.ci_hi;
  row.n_reps = est.n_reps;
  row.seed = seed;
  return row;
}

void write_estimates_csv(std::ostream& out, const std::vector<EstimateRow>& rows) {
  out << kHeader << '\n';
  for (const auto& r : rows)
    out << format_double(r.x) << ',' << format_double(r.eps) << ',' << r.estimator << ','
        << format_double(r.p) << ',' << format_double(r.stderr_) << ',' << format_double(r.ci_lo)
        << ',' << format_double(r.ci_hi) << ',' << r.n_reps << ',' << r.seed << '\n';
}

std::vector<EstimateRow> read_estimates_csv(std::istream& in) {
  std::vector<EstimateRow> rows;
  std::string line;
  std::size_t line_no = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      if (line != kHeader)
        throw std::runtime_error("estimates CSV line " + std::to_string(line_no) +
                                 ": unexpected header");
      header = true;
      continue;
    }
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != 9)
      throw std::runtime_error("estimates CSV line " + std::to_string(line_no) +
                               ": expected 9 columns");
    try {
      EstimateRow r;
      r.x = parse_double(cells[0]);
      r.eps = parse_double(cells[1]);
      r.estimator = cells[2];
      r.p = parse_double(cells[3]);
      r.stderr_ = parse_double(cells[4]);
      r.ci_lo = parse_double(cells[5]);
      r.ci_hi = parse_double(cells[6]);
      r.n_reps = std::stoull(cells[7]);
      r.seed = std::stoull(cells[8]);
      rows.push_back(std::move(r));
    } catch (const std::exception& e) {
      throw std::runtime_error("estimates CSV line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return rows;
}

void write_slope_csv(std::ostream& out, const SlopeReport& report) {
  out << "# fitted_slope=" << format_double(report.fitted_slope) << '\n';
  out << "# target_slope=" << format_double(report.target_slope) << '\n';
  out << "# relative_error=" << format_double(report.relative_error) << '\n';
  for (double x : report.dropped_x) out << "# dropped zero-hit x=" << format_double(x) << '\n';
  out << "x,growth,log_p,predicted\n";
  for (std::size_t i = 0; i < report.x_grid.size(); ++i)
    out << format_double(report.x_grid[i]) << ',' << format_double(report.growth[i]) << ','
        << format_double(report.log_p[i]) << ',' << format_double(report.predicted[i]) << '\n';
}

}  // namespace ginibrenet
