#pragma once

#include <iosfwd>
#include <string>

#include "ginibrenet/samplers.hpp"

namespace ginibrenet {

// CSV layout:
//   # process=<kind> beta=<b> radius=<r> seed=<s>
//   x,y
//   <x>,<y>
// Reals use the shortest round-trip representation, so write/read is bit-exact.
void write_pattern_csv(std::ostream& out, const PointPattern& pattern);
PointPattern read_pattern_csv(std::istream& in);

void save_pattern_csv(const std::string& path, const PointPattern& pattern);
PointPattern load_pattern_csv(const std::string& path);

// Shortest decimal text that parses back to the same double.
std::string format_double(double value);
double parse_double(const std::string& text);

}  // namespace ginibrenet
