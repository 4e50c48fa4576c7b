#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace mptpp {

// Portable random helpers. The standard distributions are implementation
// defined, so every draw goes through these to keep results identical
// across standard libraries.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound);

  // Uniform integer in [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi);

  // Uniform double in [0, 1).
  double unit();

  // Index drawn with probability proportional to weights (all >= 0, sum > 0).
  std::size_t roulette(const std::vector<double>& weights);

private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

// Independent stream seed for replication `index` of a run seeded with `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

} // namespace mptpp
