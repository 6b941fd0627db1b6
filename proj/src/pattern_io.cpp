#include "ginibrenet/pattern_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace ginibrenet {

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& text) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  while (first < last && (*first == ' ' || *first == '\t')) ++first;
  while (last > first && (last[-1] == ' ' || last[-1] == '\t' || last[-1] == '\r')) --last;
  if (first < last && *first == '+') ++first;
  const auto res = std::from_chars(first, last, value);
  if (res.ec != std::errc() || res.ptr != last)
    throw std::invalid_argument("not a number: '" + text + "'");
  return value;
}

void write_pattern_csv(std::ostream& out, const PointPattern& pattern) {
  out << "# process=" << to_string(pattern.process) << " beta=" << format_double(pattern.beta)
      << " radius=" << format_double(pattern.window.radius) << " seed=" << pattern.seed << '\n';
  out << "x,y\n";
  for (const auto& p : pattern.points)
    out << format_double(p.real()) << ',' << format_double(p.imag()) << '\n';
}

PointPattern read_pattern_csv(std::istream& in) {
  PointPattern pattern;
  std::string line;
  std::size_t line_no = 0;
  bool header = false;
  auto fail = [&](const std::string& msg) {
    throw std::runtime_error("pattern CSV line " + std::to_string(line_no) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream fields(line.substr(1));
      std::string token;
      while (fields >> token) {
        const auto eq = token.find('=');
        if (eq == std::string::npos) continue;
        const auto key = token.substr(0, eq);
        const auto value = token.substr(eq + 1);
        try {
          if (key == "process")
            pattern.process = parse_process_kind(value);
          else if (key == "beta")
            pattern.beta = parse_double(value);
          else if (key == "radius")
            pattern.window.radius = parse_double(value);
          else if (key == "seed")
            pattern.seed = std::stoull(value);
        } catch (const std::exception& e) {
          fail(e.what());
        }
      }
      continue;
    }
    if (!header) {
      if (line != "x,y") fail("expected header 'x,y'");
      header = true;
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos) fail("expected two comma-separated values");
    try {
      pattern.points.emplace_back(parse_double(line.substr(0, comma)),
                                  parse_double(line.substr(comma + 1)));
    } catch (const std::exception& e) {
      fail(e.what());
    }
  }
  if (!header) throw std::runtime_error("pattern CSV: missing 'x,y' header");
  return pattern;
}

void save_pattern_csv(const std::string& path, const PointPattern& pattern) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  write_pattern_csv(out, pattern);
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

PointPattern load_pattern_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return read_pattern_csv(in);
}

}  // namespace ginibrenet
