#pragma once

// Reproducible randomness. The engine is std::mt19937_64, whose output
// sequence is fixed by the C++ standard; uniform and Gaussian draws are done
// by hand because the std distributions are implementation-defined.

#include <cstdint>
#include <random>

namespace driftreg {

// splitmix64 finalizer (Steele, Lea, Flood 2014).
std::uint64_t splitmix64(std::uint64_t x) noexcept;

// Seed of replica `index` derived from `base`: splitmix64(base ^ splitmix64(index + 1)).
std::uint64_t child_seed(std::uint64_t base, std::uint64_t index) noexcept;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }
  // Uniform on [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  // Standard normal via the Box-Muller transform; values come in pairs, the
  // second one is cached for the next call.
  double normal();
  double normal(double mean, double stddev) { return mean + stddev * normal(); }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace driftreg
