#pragma once

#include <cstdint>
#include <random>

namespace ginibrenet {

// Mixes a 64-bit value (SplitMix64 finalizer).
std::uint64_t mix64(std::uint64_t x);

// Derives an independent seed for a named sub-experiment.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag);

// A reproducible random stream identified by (master_seed, stream_id).
// Identical pairs yield bit-identical output; distinct stream ids are
// seeded through a full seed_seq so their sequences are unrelated.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t stream_id);

  std::uint64_t master_seed() const { return master_seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  // Uniform on [0, 1) with 53 random bits.
  double uniform();
  // Uniform on (0, 1].
  double uniform_positive() { return 1.0 - uniform(); }
  double normal();
  double gamma(double shape);
  std::uint64_t poisson(double mean);

  std::mt19937_64& engine() { return engine_; }

 private:
  std::uint64_t master_seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
};

}  // namespace ginibrenet
