#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "ginibrenet/config.hpp"
#include "ginibrenet/pattern_io.hpp"
#include "ginibrenet/results_io.hpp"

using namespace ginibrenet;
namespace fs = std::filesystem;

namespace {

ExperimentConfig parse(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in, "test.ini");
}

struct Run {
  int status;
  std::string output;
};

Run run_cli(const std::string& args) {
  const std::string cmd = std::string(GINIBRENET_CLI) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string output;
  char buf[4096];
  while (std::fgets(buf, sizeof buf, pipe)) output += buf;
  const int raw = pclose(pipe);
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, output};
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("ginibrenet_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* kMinimal =
    "[fading]\nkind = exponential\nc = 1\n"
    "[estimation]\nx_grid = 1, 2, 3\nn_reps = 200\n";

}  // namespace

TEST_CASE("configuration parsing") {
  const auto cfg = parse(
      "# comment\n[process]\nkind = beta_ginibre\nbeta = 0.5\nradius = 3\n"
      "[receiver]\nx = 1\ny = -0.5 ; trailing\n"
      "[fading]\nkind = weibull_super\nc = 2\ngamma = 3\n"
      "[estimation]\nestimator = tilted\nx_grid = 1,2.5, 4\nseed = 99\nthreads = 2\n"
      "[output]\nprefix = run\n");
  CHECK(cfg.model.process == ProcessKind::beta_ginibre);
  CHECK(cfg.model.beta == 0.5);
  CHECK(cfg.model.window.radius == 3.0);
  CHECK(cfg.model.receiver == PlanarPoint{1.0, -0.5});
  CHECK(cfg.model.fading.kind() == FadingKind::weibull_super);
  CHECK(cfg.model.fading.gamma() == 3.0);
  CHECK(cfg.estimator == Estimator::tilted);
  CHECK(cfg.x_grid == std::vector<double>{1.0, 2.5, 4.0});
  CHECK(cfg.seed == 99u);
  CHECK(cfg.threads == 2u);
  CHECK(cfg.output_prefix == "run");

  const auto defaults = parse(kMinimal);
  CHECK(defaults.model.process == ProcessKind::palm_beta_ginibre);
  CHECK(defaults.n_reps == 200);
  CHECK(!defaults.seed);
  CHECK(defaults.regression);
}

TEST_CASE("configuration errors name the line") {
  auto message = [](const std::string& text) {
    try {
      parse(text);
    } catch (const ConfigError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(message("[estimation]\nx_grid = 1,2,3\n").find("missing required section [fading]") !=
        std::string::npos);
  CHECK(message("[fading]\nkind = exponential\nc = 1\n[estimation]\nx_grid = 2\n")
            .find("regression needs at least 3 x_grid points") != std::string::npos);
  CHECK(message("[fading]\nkind = exponential\nc = 1\nspeed = 3\n[estimation]\nx_grid = 1,2,3\n")
            .find("test.ini:4:") != std::string::npos);
  CHECK(message("[fading]\nkind = exponential\nc = 1\nc = 2\n[estimation]\nx_grid = 1,2,3\n")
            .find("test.ini:4:") != std::string::npos);
  CHECK(!message("[fading]\nkind = exponential\nc = -1\n[estimation]\nx_grid = 1,2,3\n").empty());
  CHECK(!message("[fading]\nkind = exponential\nc = 1\n[estimation]\nx_grid = 1,2,3\neps_grid = 0.1\n")
             .empty());
  CHECK(!message("[fading]\nkind = exponential\nc = 1\n").empty());
  CHECK(!message("[fading]\nkind = exponential\nc = 1\n[nowhere]\n[estimation]\nx_grid = 1,2,3\n").empty());
  CHECK(!message("[fading]\nkind = exponential\nc = 1\n[estimation]\nx_grid = 1,2,3\nn_reps = ten\n").empty());
  CHECK(config_reference().find("split_fraction") != std::string::npos);
}

TEST_CASE("estimates CSV round-trip") {
  TailEstimate est;
  est.probability = 1.0 / 3.0;
  est.std_error = 1e-5;
  est.ci_lo = 0.3;
  est.ci_hi = 0.4;
  est.n_reps = 1234;
  est.estimator = Estimator::tilted;
  const std::vector<EstimateRow> rows{make_row(2.5, 1.0, est, 42), make_row(3.0, 0.1, est, 7)};
  std::stringstream io;
  write_estimates_csv(io, rows);
  CHECK(io.str().rfind("x,eps,estimator,p,stderr,ci_lo,ci_hi,n_reps,seed\n", 0) == 0);
  const auto back = read_estimates_csv(io);
  REQUIRE(back.size() == 2);
  CHECK(back[0].p == rows[0].p);
  CHECK(back[0].stderr_ == rows[0].stderr_);
  CHECK(back[1].eps == 0.1);
  CHECK(back[1].estimator == "tilted");
  CHECK(back[1].seed == 7);
  CHECK(back[0].n_reps == 1234);
}

TEST_CASE("CLI exit codes") {
  CHECK(run_cli("--no-such-flag").status == 2);
  CHECK(run_cli("sample --process ginibre --radius -1").status != 0);

  const auto dir = scratch("exit");
  std::ofstream(dir / "nofading.ini") << "[estimation]\nx_grid = 1,2,3\n";
  const auto missing = run_cli("estimate --config " + (dir / "nofading.ini").string());
  CHECK(missing.status == 2);
  CHECK(missing.output.find("missing required section [fading]") != std::string::npos);

  std::ofstream(dir / "short.ini") << "[fading]\nkind = exponential\nc = 1\n[estimation]\nx_grid = 2\n";
  CHECK(run_cli("estimate --config " + (dir / "short.ini").string()).status == 2);

  const auto insensitive = run_cli("rates --fading exponential --c 1 --x 2 --compare-poisson");
  CHECK(insensitive.status == 2);
  CHECK(insensitive.output.find("insensitive regime: identical constants") != std::string::npos);
}

TEST_CASE("CLI rates") {
  const auto r = run_cli("rates --fading bounded --B 1 --R 1 --alpha 4 --x 2 --compare-poisson");
  CHECK(r.status == 0);
  CHECK(r.output.find("-0.5") != std::string::npos);
  CHECK(r.output.find("-1") != std::string::npos);
}

TEST_CASE("CLI sample is deterministic") {
  const auto dir = scratch("sample");
  const auto a = dir / "a.csv", b = dir / "b.csv", c = dir / "c.csv";
  REQUIRE(run_cli("sample --process beta-ginibre --beta 0.5 --radius 4 --seed 9 --out " + a.string()).status == 0);
  REQUIRE(run_cli("sample --process beta-ginibre --beta 0.5 --radius 4 --seed 9 --out " + b.string()).status == 0);
  REQUIRE(run_cli("sample --process beta-ginibre --beta 0.5 --radius 4 --seed 10 --out " + c.string()).status == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(slurp(a) != slurp(c));
  const auto pattern = load_pattern_csv(a.string());
  CHECK(pattern.beta == 0.5);
  CHECK(pattern.seed == 9);
  for (const auto& z : pattern.points) CHECK(std::abs(z) <= 4.0);
}

TEST_CASE("CLI estimate writes reproducible CSV output") {
  const auto dir = scratch("estimate");
  std::ofstream(dir / "run.ini") << kMinimal << "[output]\nprefix = run\n";
  const std::string base = "estimate --config " + (dir / "run.ini").string() + " --out-dir " + dir.string();
  REQUIRE(run_cli(base + " --seed 5").status == 0);
  const auto first = slurp(dir / "run_estimates.csv");
  REQUIRE(run_cli(base + " --seed 5 --threads 3").status == 0);
  CHECK(slurp(dir / "run_estimates.csv") == first);
  CHECK(fs::exists(dir / "run_slope.csv"));

  std::ifstream in(dir / "run_estimates.csv");
  const auto rows = read_estimates_csv(in);
  REQUIRE(rows.size() == 3);
  for (const auto& row : rows) {
    CHECK(row.seed == 5);
    CHECK(row.n_reps == 200);
  }
  CHECK(rows[0].p >= rows[2].p);
}
