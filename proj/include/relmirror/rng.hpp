#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace relmirror {

// SplitMix64 finalizer. Used to derive independent seeds.
std::uint64_t splitmix64(std::uint64_t x);

// Seed of replication `stream` for base seed `base`:
// splitmix64(base ^ splitmix64(stream + 0x9E3779B97F4A7C15)).
std::uint64_t mix_seed(std::uint64_t base, std::uint64_t stream);

// Deterministic generator. All draws are built from raw mt19937_64 words so
// sequences do not depend on the standard library's distribution classes.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform on {0, ..., n-1} by rejection; n >= 1.
  std::size_t index(std::size_t n);

  // Standard normal via the Marsaglia polar method.
  double normal();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace relmirror
