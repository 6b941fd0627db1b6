#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "ginibrenet/config.hpp"
#include "ginibrenet/ldp_rates.hpp"
#include "ginibrenet/pattern_io.hpp"
#include "ginibrenet/results_io.hpp"
#include "ginibrenet/samplers.hpp"
#include "ginibrenet/tail_estimation.hpp"
#include "ginibrenet/validation.hpp"

namespace fs = std::filesystem;
using namespace ginibrenet;

namespace {

constexpr int kOk = 0;
constexpr int kRuntime = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag,
                           const std::optional<std::uint64_t>& config = std::nullopt) {
  if (flag) return *flag;
  if (config) return *config;
  if (const char* env = std::getenv("GINIBRENET_SEED")) {
    std::size_t pos = 0;
    std::uint64_t seed = 0;
    try {
      seed = std::stoull(env, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos == 0 || env[pos] != '\0')
      throw UsageError(std::string("GINIBRENET_SEED is not an unsigned integer: '") + env + "'");
    return seed;
  }
  return 1;
}

std::ofstream open_output(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  return out;
}

// ------------------------------------------------------------------ sample
struct SampleArgs {
  std::string process = "ginibre";
  double beta = 1.0;
  double radius = 10.0;
  double intensity = kGinibreIntensity;
  std::optional<std::uint64_t> seed;
  std::string out;
};

int cmd_sample(const SampleArgs& a) {
  ProcessKind kind;
  try {
    kind = parse_process_kind(a.process);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  const auto seed = resolve_seed(a.seed);
  RngStream rng(seed, 0);
  PointPattern pattern;
  try {
    pattern = sample_process(kind, a.beta, a.radius, a.intensity, rng);
  } catch (const std::domain_error& e) {
    throw UsageError(e.what());
  }
  pattern.seed = seed;
  if (a.out.empty() || a.out == "-") {
    write_pattern_csv(std::cout, pattern);
  } else {
    auto out = open_output(a.out);
    write_pattern_csv(out, pattern);
    std::cerr << "wrote " << pattern.size() << " points to " << a.out << '\n';
  }
  return kOk;
}

// ---------------------------------------------------------------- estimate
struct EstimateArgs {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
  std::string out_dir;
};

int cmd_estimate(const EstimateArgs& a) {
  ExperimentConfig cfg;
  try {
    cfg = load_config(a.config);
  } catch (const ConfigError& e) {
    throw UsageError(e.what());
  }
  const auto seed = resolve_seed(a.seed, cfg.seed);
  if (a.threads) cfg.threads = *a.threads;
  const fs::path dir = a.out_dir.empty() ? fs::path(cfg.output_directory) : fs::path(a.out_dir);
  EstimationOptions opts;
  opts.threads = cfg.threads;
  opts.split_fraction = cfg.split_fraction;

  const bool x_mode = !cfg.x_grid.empty();
  const auto& grid = x_mode ? cfg.x_grid : cfg.eps_grid;
  const auto est_path = dir / (cfg.output_prefix + "_estimates.csv");
  auto out = open_output(est_path);
  out << "x,eps,estimator,p,stderr,ci_lo,ci_hi,n_reps,seed\n";
  std::vector<TailEstimate> estimates;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = x_mode ? grid[i] : cfg.x;
    const double eps = x_mode ? 1.0 : grid[i];
    // eps I >= x  <=>  I >= x / eps
    auto est = estimate_interference_tail(cfg.model, x / eps, cfg.n_reps, cfg.estimator,
                                          derive_seed(seed, i), opts);
    std::ostringstream row;
    write_estimates_csv(row, {make_row(x, eps, est, seed)});
    const auto text = row.str();
    out << text.substr(text.find('\n') + 1) << std::flush;
    std::cout << "x=" << x << " eps=" << eps << " p=" << est.probability
              << " stderr=" << est.std_error << '\n';
    estimates.push_back(std::move(est));
  }
  std::cerr << "wrote " << est_path.string() << '\n';

  if (x_mode && cfg.regression) {
    const auto regime =
        ldp::LdpRegime::from_fading(cfg.model.fading, cfg.model.atten_R, cfg.model.atten_alpha);
    const auto report = fit_slope(regime, cfg.x_grid, std::move(estimates));
    const auto slope_path = dir / (cfg.output_prefix + "_slope.csv");
    auto slope_out = open_output(slope_path);
    write_slope_csv(slope_out, report);
    std::cout << "regime=" << ldp::to_string(regime.kind()) << " fitted_slope=" << report.fitted_slope
              << " target_slope=" << report.target_slope
              << " relative_error=" << report.relative_error << '\n';
    std::cerr << "wrote " << slope_path.string() << '\n';
  }
  return kOk;
}

// ------------------------------------------------------------------- rates
struct RatesArgs {
  std::string fading = "exponential";
  double B = 1.0, a = 2.0, b = 2.0, c = 1.0, gamma = 2.0;
  double R = 1.0, alpha = 4.0;
  std::vector<double> x{1.0, 2.0, 5.0, 10.0};
  std::vector<double> eps{0.5, 0.1, 0.01};
  bool compare_poisson = false;
  std::string out;
};

std::string cell(const std::function<double()>& f) {
  try {
    return format_double(f());
  } catch (const std::domain_error&) {
    return "nan";
  }
}

int cmd_rates(const RatesArgs& a) {
  std::optional<ldp::LdpRegime> regime;
  try {
    FadingSpec spec;
    switch (parse_fading_kind(a.fading)) {
      case FadingKind::bounded: spec = FadingSpec::bounded(a.B, a.a, a.b); break;
      case FadingKind::weibull_super: spec = FadingSpec::weibull_super(a.c, a.gamma); break;
      case FadingKind::exponential: spec = FadingSpec::exponential(a.c); break;
      case FadingKind::weibull_sub: spec = FadingSpec::weibull_sub(a.c, a.gamma); break;
      case FadingKind::pareto: spec = FadingSpec::pareto(a.c); break;
    }
    regime.emplace(ldp::LdpRegime::from_fading(spec, a.R, a.alpha));
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  if (a.compare_poisson && regime->kind() != ldp::RegimeKind::bounded &&
      regime->kind() != ldp::RegimeKind::weibull_super)
    throw UsageError("--compare-poisson: insensitive regime: identical constants (with " +
                     ldp::to_string(regime->kind()) +
                     " fading the log-tail of the interference does not depend on node placement)");

  std::ostringstream table;
  table << "# regime=" << ldp::to_string(regime->kind()) << " fading=" << regime->fading().describe()
        << " R=" << format_double(a.R) << " alpha=" << format_double(a.alpha) << '\n';
  table << "# ginibre_constant=" << format_double(ldp::tail_constant(*regime)) << '\n';
  if (a.compare_poisson)
    table << "# poisson_constant=" << format_double(ldp::poisson_comparison(*regime)) << '\n';
  table << "x,eps,rate,speed,asymptote";
  if (a.compare_poisson) table << ",poisson_rate,poisson_speed";
  table << '\n';
  for (double x : a.x) {
    for (double eps : a.eps) {
      table << format_double(x) << ',' << format_double(eps) << ','
            << cell([&] { return ldp::rate(*regime, x); }) << ','
            << cell([&] { return ldp::speed(*regime, eps); }) << ','
            << cell([&] { return ldp::tail_asymptote(*regime, x); });
      if (a.compare_poisson)
        table << ',' << cell([&] { return ldp::poisson_rate(*regime, x); }) << ','
              << cell([&] { return ldp::poisson_speed(*regime, eps); });
      table << '\n';
    }
  }
  if (a.out.empty() || a.out == "-") {
    std::cout << table.str();
  } else {
    auto out = open_output(a.out);
    out << table.str();
  }
  return kOk;
}

// ---------------------------------------------------------------- validate
struct ValidateArgs {
  bool quick = false;
  std::vector<int> only;
  std::optional<std::uint64_t> seed;
  unsigned threads = 1;
};

int cmd_validate(const ValidateArgs& a) {
  validation::SuiteOptions opts;
  opts.quick = a.quick;
  opts.only = a.only;
  opts.threads = a.threads;
  if (a.seed) opts.seed = *a.seed;
  for (int id : a.only)
    if (id < 1 || id > validation::criterion_count())
      throw UsageError("--only: no criterion " + std::to_string(id));
  opts.on_result = [](const validation::CriterionResult& r) {
    std::cout << validation::format_result(r) << std::endl;
  };
  const auto results = validation::run_suite(opts);
  std::size_t failed = 0;
  for (const auto& r : results) failed += r.passed ? 0 : 1;
  std::cout << (failed == 0 ? "all " + std::to_string(results.size()) + " criteria passed"
                            : std::to_string(failed) + " of " + std::to_string(results.size()) +
                                  " criteria failed")
            << (a.quick ? " (quick)" : "") << '\n';
  return failed == 0 ? kOk : kRuntime;
}

// ----------------------------------------------------------------- figures
struct FiguresArgs {
  double radius = 10.0;
  double beta = 0.25;
  std::optional<std::uint64_t> seed;
  std::string out_dir = "figures";
};

int cmd_figures(const FiguresArgs& a) {
  const auto seed = resolve_seed(a.seed);
  const fs::path dir(a.out_dir);
  struct Item {
    ProcessKind kind;
    double beta;
    std::string file;
  };
  const std::vector<Item> items{
      {ProcessKind::ginibre, 1.0, "ginibre.csv"},
      {ProcessKind::beta_ginibre, a.beta, "beta_ginibre.csv"},
      {ProcessKind::poisson, 1.0, "poisson.csv"},
  };
  std::uint64_t stream = 0;
  for (const auto& item : items) {
    RngStream rng(seed, stream++);
    auto pattern = sample_process(item.kind, item.beta, a.radius, kGinibreIntensity, rng);
    pattern.seed = seed;
    auto out = open_output(dir / item.file);
    write_pattern_csv(out, pattern);
    std::cout << to_string(item.kind) << ": " << pattern.size() << " points -> "
              << (dir / item.file).string() << '\n';
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Interference in beta-Ginibre wireless networks: sampling, tail estimation, "
               "large-deviation rates and validation"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "ginibrenet 1.0.0");

  SampleArgs sa;
  auto* sample = app.add_subcommand("sample", "Sample one point pattern and write it as CSV");
  sample->add_option("--process", sa.process, "ginibre | beta-ginibre | palm | poisson")
      ->capture_default_str();
  sample->add_option("--beta", sa.beta, "Thinning level in (0,1]")->capture_default_str();
  sample->add_option("--radius", sa.radius, "Window radius b(O, radius)")->capture_default_str();
  sample->add_option("--intensity", sa.intensity, "Poisson intensity")->capture_default_str();
  sample->add_option("--seed", sa.seed, "Master seed (fallback: GINIBRENET_SEED, then 1)");
  sample->add_option("--out", sa.out, "Output path (default: stdout)");

  EstimateArgs ea;
  auto* estimate = app.add_subcommand(
      "estimate", "Estimate P(eps I >= x) over a grid and fit the decay slope");
  estimate->add_option("--config", ea.config, "Experiment configuration file")->required();
  estimate->add_option("--seed", ea.seed, "Overrides [estimation] seed");
  estimate->add_option("--threads", ea.threads, "Overrides [estimation] threads");
  estimate->add_option("--out-dir", ea.out_dir, "Overrides [output] directory");
  estimate->footer(config_reference());

  RatesArgs ra;
  auto* rates = app.add_subcommand("rates", "Tabulate rate functions, speeds and tail asymptotes");
  rates->add_option("--fading", ra.fading,
                    "bounded | weibull_super | exponential | weibull_sub | pareto")
      ->capture_default_str();
  rates->add_option("--B", ra.B, "Bounded fading supremum")->capture_default_str();
  rates->add_option("--a", ra.a, "Bounded fading Beta shape a")->capture_default_str();
  rates->add_option("--b", ra.b, "Bounded fading Beta shape b")->capture_default_str();
  rates->add_option("--c", ra.c, "Fading rate c")->capture_default_str();
  rates->add_option("--gamma", ra.gamma, "Weibull exponent")->capture_default_str();
  rates->add_option("--R", ra.R, "Attenuation radius R")->capture_default_str();
  rates->add_option("--alpha", ra.alpha, "Path-loss exponent")->capture_default_str();
  rates->add_option("--x", ra.x, "Levels x")->delimiter(',')->capture_default_str();
  rates->add_option("--eps", ra.eps, "Scales eps in (0,1)")->delimiter(',')->capture_default_str();
  rates->add_flag("--compare-poisson", ra.compare_poisson,
                  "Add the Poisson-network constants (bounded and weibull_super only)");
  rates->add_option("--out", ra.out, "Output path (default: stdout)");

  ValidateArgs va;
  auto* validate = app.add_subcommand("validate", "Run the acceptance suite; nonzero exit on failure");
  validate->add_flag("--quick", va.quick, "Reduced replication budgets");
  validate->add_option("--only", va.only, "Criteria to run (1-11)")->delimiter(',');
  validate->add_option("--seed", va.seed, "Master seed of the suite");
  validate->add_option("--threads", va.threads, "Worker threads")->capture_default_str();

  FiguresArgs fa;
  auto* figures = app.add_subcommand(
      "figures", "Write Ginibre, beta-Ginibre and Poisson realizations as scatter CSV files");
  figures->add_option("--radius", fa.radius, "Window radius")->capture_default_str();
  figures->add_option("--beta", fa.beta, "Thinning level of the beta-Ginibre pattern")
      ->capture_default_str();
  figures->add_option("--seed", fa.seed, "Master seed (fallback: GINIBRENET_SEED, then 1)");
  figures->add_option("--out-dir", fa.out_dir, "Output directory")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*sample) return cmd_sample(sa);
    if (*estimate) return cmd_estimate(ea);
    if (*rates) return cmd_rates(ra);
    if (*validate) return cmd_validate(va);
    if (*figures) return cmd_figures(fa);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const SamplerStall& e) {
    std::cerr << "sampler stall: " << e.what() << " (placed " << e.placed() << " of " << e.target()
              << " points after " << e.proposals() << " proposals)\n";
    return kRuntime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntime;
  }
  return kUsage;
}
