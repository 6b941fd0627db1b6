#include "ginibrenet/config.hpp"

#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <set>
#include <sstream>

#include "ginibrenet/pattern_io.hpp"

namespace ginibrenet {

ConfigError::ConfigError(const std::string& source, std::size_t line, const std::string& message)
    : std::runtime_error(source + (line > 0 ? ":" + std::to_string(line) : std::string()) + ": " +
                         message),
      line_(line) {}

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

struct Entry {
  std::string value;
  std::size_t line;
};

using Section = std::map<std::string, Entry>;

const std::map<std::string, std::set<std::string>>& known_keys() {
  static const std::map<std::string, std::set<std::string>> keys{
      {"process", {"kind", "beta", "radius", "center_x", "center_y", "intensity"}},
      {"receiver", {"x", "y"}},
      {"attenuation", {"R", "alpha"}},
      {"fading", {"kind", "B", "a", "b", "c", "gamma"}},
      {"noise", {"w"}},
      {"threshold", {"tau"}},
      {"estimation",
       {"estimator", "n_reps", "x_grid", "eps_grid", "x", "seed", "threads", "split_fraction",
        "regression"}},
      {"output", {"directory", "prefix", "formats"}},
  };
  return keys;
}

class Reader {
 public:
  Reader(std::string source, std::map<std::string, Section> sections,
         std::map<std::string, std::size_t> section_lines)
      : source_(std::move(source)),
        sections_(std::move(sections)),
        section_lines_(std::move(section_lines)) {}

  bool has(const std::string& section) const { return sections_.count(section) > 0; }

  const Entry* find(const std::string& section, const std::string& key) const {
    const auto s = sections_.find(section);
    if (s == sections_.end()) return nullptr;
    const auto e = s->second.find(key);
    return e == s->second.end() ? nullptr : &e->second;
  }

  [[noreturn]] void fail(std::size_t line, const std::string& message) const {
    throw ConfigError(source_, line, message);
  }

  std::size_t section_line(const std::string& section) const {
    const auto it = section_lines_.find(section);
    return it == section_lines_.end() ? 0 : it->second;
  }

  double real(const std::string& section, const std::string& key, double fallback) const {
    const auto* e = find(section, key);
    if (!e) return fallback;
    try {
      return parse_double(e->value);
    } catch (const std::exception&) {
      fail(e->line, "[" + section + "] " + key + ": expected a number, got '" + e->value + "'");
    }
  }

  double required_real(const std::string& section, const std::string& key) const {
    if (!find(section, key))
      fail(section_line(section), "[" + section + "] is missing required key '" + key + "'");
    return real(section, key, 0.0);
  }

  std::uint64_t integer(const std::string& section, const std::string& key,
                        std::uint64_t fallback) const {
    const auto* e = find(section, key);
    if (!e) return fallback;
    std::size_t pos = 0;
    std::uint64_t value = 0;
    try {
      if (!e->value.empty() && e->value[0] == '-') throw std::invalid_argument("negative");
      value = std::stoull(e->value, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos == 0 || pos != e->value.size())
      fail(e->line, "[" + section + "] " + key + ": expected a nonnegative integer, got '" +
                        e->value + "'");
    return value;
  }

  std::string text(const std::string& section, const std::string& key,
                   const std::string& fallback) const {
    const auto* e = find(section, key);
    return e ? e->value : fallback;
  }

  std::vector<double> list(const std::string& section, const std::string& key) const {
    const auto* e = find(section, key);
    if (!e) return {};
    std::vector<double> out;
    std::stringstream ss(e->value);
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      if (item.empty()) continue;
      try {
        out.push_back(parse_double(item));
      } catch (const std::exception&) {
        fail(e->line, "[" + section + "] " + key + ": '" + item + "' is not a number");
      }
    }
    return out;
  }

  bool boolean(const std::string& section, const std::string& key, bool fallback) const {
    const auto* e = find(section, key);
    if (!e) return fallback;
    if (e->value == "true" || e->value == "yes" || e->value == "1") return true;
    if (e->value == "false" || e->value == "no" || e->value == "0") return false;
    fail(e->line, "[" + section + "] " + key + ": expected true or false");
  }

  // Runs fn, re-anchoring domain errors at the given key's line.
  template <class Fn>
  auto anchored(const std::string& section, const std::string& key, Fn&& fn) const {
    try {
      return fn();
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& ex) {
      const auto* e = find(section, key);
      fail(e ? e->line : section_line(section), "[" + section + "] " + ex.what());
    }
  }

 private:
  std::string source_;
  std::map<std::string, Section> sections_;
  std::map<std::string, std::size_t> section_lines_;
};

FadingSpec read_fading(const Reader& r) {
  const auto* kind_entry = r.find("fading", "kind");
  if (!kind_entry) r.fail(r.section_line("fading"), "[fading] is missing required key 'kind'");
  const auto kind = r.anchored("fading", "kind", [&] { return parse_fading_kind(kind_entry->value); });
  return r.anchored("fading", "kind", [&] {
    switch (kind) {
      case FadingKind::bounded:
        return FadingSpec::bounded(r.required_real("fading", "B"), r.real("fading", "a", 2.0),
                                   r.real("fading", "b", 2.0));
      case FadingKind::weibull_super:
        return FadingSpec::weibull_super(r.required_real("fading", "c"),
                                         r.required_real("fading", "gamma"));
      case FadingKind::exponential:
        return FadingSpec::exponential(r.required_real("fading", "c"));
      case FadingKind::weibull_sub:
        return FadingSpec::weibull_sub(r.required_real("fading", "c"),
                                       r.required_real("fading", "gamma"));
      case FadingKind::pareto:
        return FadingSpec::pareto(r.required_real("fading", "c"));
    }
    throw std::domain_error("unknown fading kind");
  });
}

}  // namespace

ExperimentConfig parse_config(std::istream& in, const std::string& source) {
  std::map<std::string, Section> sections;
  std::map<std::string, std::size_t> section_lines;
  std::string current;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto comment = line.find_first_of("#;");
    const auto body = trim(comment == std::string::npos ? line : line.substr(0, comment));
    if (body.empty()) continue;
    if (body.front() == '[') {
      if (body.back() != ']') throw ConfigError(source, line_no, "unterminated section header");
      current = trim(body.substr(1, body.size() - 2));
      if (!known_keys().count(current))
        throw ConfigError(source, line_no, "unknown section [" + current + "]");
      if (sections.count(current))
        throw ConfigError(source, line_no, "duplicate section [" + current + "]");
      sections[current];
      section_lines[current] = line_no;
      continue;
    }
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw ConfigError(source, line_no, "expected 'key = value'");
    if (current.empty()) throw ConfigError(source, line_no, "key outside of any [section]");
    const auto key = trim(body.substr(0, eq));
    const auto value = trim(body.substr(eq + 1));
    if (!known_keys().at(current).count(key))
      throw ConfigError(source, line_no, "unknown key '" + key + "' in [" + current + "]");
    if (sections[current].count(key))
      throw ConfigError(source, line_no, "duplicate key '" + key + "' in [" + current + "]");
    sections[current][key] = {value, line_no};
  }

  const Reader r(source, std::move(sections), std::move(section_lines));
  if (!r.has("fading")) throw ConfigError(source, 0, "missing required section [fading]");

  ExperimentConfig cfg;
  auto& m = cfg.model;
  m.process = r.anchored("process", "kind", [&] {
    return parse_process_kind(r.text("process", "kind", "palm_beta_ginibre"));
  });
  m.beta = r.real("process", "beta", 1.0);
  m.window.radius = r.real("process", "radius", 2.0);
  m.window.center = {r.real("process", "center_x", 0.0), r.real("process", "center_y", 0.0)};
  m.intensity = r.real("process", "intensity", kGinibreIntensity);
  m.receiver = {r.real("receiver", "x", 0.5), r.real("receiver", "y", 0.0)};
  m.atten_R = r.real("attenuation", "R", 1.0);
  m.atten_alpha = r.real("attenuation", "alpha", 4.0);
  m.fading = read_fading(r);
  m.noise_w = r.real("noise", "w", 1.0);
  m.threshold_tau = r.real("threshold", "tau", 1.0);
  r.anchored("process", "radius", [&] {
    m.validate();
    return 0;
  });

  cfg.estimator = r.anchored("estimation", "estimator", [&] {
    return parse_estimator(r.text("estimation", "estimator", "crude"));
  });
  if (cfg.estimator == Estimator::exact_spectral) {
    const auto* e = r.find("estimation", "estimator");
    r.fail(e ? e->line : 0, "[estimation] exact_spectral is not an interference estimator");
  }
  cfg.n_reps = r.integer("estimation", "n_reps", 10000);
  if (cfg.n_reps == 0) r.fail(r.find("estimation", "n_reps")->line, "[estimation] n_reps must be positive");
  cfg.x_grid = r.list("estimation", "x_grid");
  cfg.eps_grid = r.list("estimation", "eps_grid");
  cfg.x = r.real("estimation", "x", 1.0);
  if (r.find("estimation", "seed")) cfg.seed = r.integer("estimation", "seed", 0);
  cfg.threads = static_cast<unsigned>(r.integer("estimation", "threads", 1));
  cfg.split_fraction = r.real("estimation", "split_fraction", 0.5);
  cfg.regression = r.boolean("estimation", "regression", true);

  const auto grid_line = [&](const char* key) {
    const auto* e = r.find("estimation", key);
    return e ? e->line : r.section_line("estimation");
  };
  if (!cfg.x_grid.empty() && !cfg.eps_grid.empty())
    r.fail(grid_line("eps_grid"), "[estimation] give either x_grid or eps_grid, not both");
  if (cfg.x_grid.empty() && cfg.eps_grid.empty())
    r.fail(r.section_line("estimation"), "[estimation] needs x_grid or eps_grid");
  for (double v : cfg.eps_grid)
    if (!(v > 0.0)) r.fail(grid_line("eps_grid"), "[estimation] eps values must be positive");
  for (std::size_t i = 1; i < cfg.x_grid.size(); ++i)
    if (!(cfg.x_grid[i] > cfg.x_grid[i - 1]))
      r.fail(grid_line("x_grid"), "[estimation] x_grid must be strictly increasing");
  if (cfg.regression && !cfg.x_grid.empty() && cfg.x_grid.size() < 3)
    r.fail(grid_line("x_grid"),
           "[estimation] regression needs at least 3 x_grid points (set regression = false)");
  if (!(cfg.split_fraction > 0.0))
    r.fail(grid_line("split_fraction"), "[estimation] split_fraction must be positive");

  cfg.output_directory = r.text("output", "directory", ".");
  cfg.output_prefix = r.text("output", "prefix", "estimate");
  if (const auto* e = r.find("output", "formats")) {
    cfg.formats.clear();
    std::stringstream ss(e->value);
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      if (item.empty()) continue;
      if (item != "csv") r.fail(e->line, "[output] unsupported format '" + item + "' (csv only)");
      cfg.formats.push_back(item);
    }
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, 0, "cannot open file");
  return parse_config(in, path);
}

std::string config_reference() {
  return R"(Experiment configuration: "key = value" lines under [section] headers; '#' or ';' start a comment.

[process]
  kind        ginibre | beta_ginibre | palm_beta_ginibre | poisson   (default palm_beta_ginibre)
  beta        thinning level in (0,1]                                 (default 1)
  radius      radius of the interferer window Lambda                  (default 2)
  center_x    window center, real part                                (default 0)
  center_y    window center, imaginary part                           (default 0)
  intensity   Poisson intensity                                       (default 1/pi)
[receiver]
  x, y        receiver position                                       (default 0.5, 0)
[attenuation]
  R           attenuation radius, L(x) = max(R,|x|)^-alpha            (default 1)
  alpha       path-loss exponent, > 2                                  (default 4)
[fading]      required section
  kind        bounded | weibull_super | exponential | weibull_sub | pareto   (required)
  B, a, b     bounded: B * Beta(a, b)                                  (B required; a = b = 2)
  c           rate for weibull_super, exponential, weibull_sub, pareto (required)
  gamma       Weibull exponent                                         (required for Weibull)
[noise]
  w           noise power                                              (default 1)
[threshold]
  tau         SINR threshold                                           (default 1)
[estimation]
  estimator   crude | tilted | single_jump                             (default crude)
  n_reps      replications per grid point                              (default 10000)
  x_grid      comma-separated increasing levels, eps = 1               (one of x_grid/eps_grid)
  eps_grid    comma-separated eps values at fixed x                    (one of x_grid/eps_grid)
  x           level used with eps_grid                                 (default 1)
  seed        master seed                                              (default --seed, GINIBRENET_SEED, 1)
  threads     worker threads; results do not depend on it              (default 1)
  split_fraction  single_jump threshold as a fraction of x             (default 0.5)
  regression  fit log p against the regime growth function             (default true; needs >= 3 x_grid points)
[output]
  directory   output directory                                         (default .)
  prefix      file name prefix                                         (default estimate)
  formats     csv                                                      (default csv)
)";
}

}  // namespace ginibrenet
