#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ginibrenet/interference.hpp"
#include "ginibrenet/tail_estimation.hpp"

namespace ginibrenet {

// Parse failure anchored at a line of the source (0 when not line-specific).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& source, std::size_t line, const std::string& message);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct ExperimentConfig {
  NetworkModel model;
  Estimator estimator = Estimator::crude;
  std::size_t n_reps = 10000;
  // Either a grid of x with eps = 1, or a grid of eps at fixed x.
  std::vector<double> x_grid;
  std::vector<double> eps_grid;
  double x = 1.0;
  std::optional<std::uint64_t> seed;
  unsigned threads = 1;
  double split_fraction = 0.5;
  bool regression = true;
  std::string output_directory = ".";
  std::string output_prefix = "estimate";
  std::vector<std::string> formats{"csv"};
};

// Sectioned "key = value" text; '#' and ';' start comments.
ExperimentConfig parse_config(std::istream& in, const std::string& source = "<config>");
ExperimentConfig load_config(const std::string& path);

// Every section, key and default, for --help.
std::string config_reference();

}  // namespace ginibrenet
