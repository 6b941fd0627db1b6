#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ginibrenet {

// Points of the plane are complex numbers, in units of the Ginibre length scale.
using PlanarPoint = std::complex<double>;

struct Disk {
  PlanarPoint center{0.0, 0.0};
  double radius = 1.0;

  // Closed-disk membership.
  bool contains(PlanarPoint p) const { return std::abs(p - center) <= radius; }
  // Open-disk membership, used for the b(y,r)° sub-events.
  bool contains_open(PlanarPoint p) const { return std::abs(p - center) < radius; }
};

inline constexpr double kGinibreIntensity = 1.0 / std::numbers::pi;

// Thrown when a rejection loop exceeds its proposal budget.
class SamplerStall : public std::runtime_error {
 public:
  SamplerStall(const std::string& what, std::size_t placed, std::size_t target,
               std::size_t proposals)
      : std::runtime_error(what), placed_(placed), target_(target), proposals_(proposals) {}

  std::size_t placed() const { return placed_; }
  std::size_t target() const { return target_; }
  std::size_t proposals() const { return proposals_; }

 private:
  std::size_t placed_;
  std::size_t target_;
  std::size_t proposals_;
};

// Thrown when E[exp(tZ)] is infinite for the requested t.
class MgfDivergence : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace ginibrenet
