#pragma once

#include <cstdint>
#include <random>

namespace ojaregret {

// Seeded generator all randomness flows through. Gaussian samples are
// produced by Box-Muller on top of the raw mt19937_64 stream so that a
// pinned seed yields the same values on every standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64();
  // Uniform in [0, 1).
  double uniform();
  // Uniform in [lo, hi).
  double uniform(double lo, double hi);
  // Standard normal.
  double normal();
  // Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);

  // Independent stream derived from (seed, stream); forked generators are
  // unaffected by draws made on the parent, so trials can run in parallel.
  Rng fork(std::uint64_t stream) const;

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace ojaregret
