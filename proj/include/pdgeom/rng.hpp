#pragma once

#include <cstdint>
#include <random>

namespace pdgeom {

// Deterministic random source for sweeps and CLI reports.
//
// Algorithm (fixed across platforms): the 64-bit Mersenne twister mt19937_64
// exactly as specified by the C++ standard, seeded through one SplitMix64
// scramble. Uniform doubles take the top 53 bits of one draw, so a given seed
// produces bit-identical streams everywhere; std::*_distribution is avoided
// on purpose because its output is implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(splitmix64(seed)) {}

  std::uint64_t next_u64() { return gen_(); }

  // Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform index in [0, n); n must be positive.
  std::size_t uniform_index(std::size_t n) {
    auto k = static_cast<std::size_t>(uniform() * static_cast<double>(n));
    return k < n ? k : n - 1;
  }

  bool coin() { return (next_u64() >> 63) != 0; }

  // Stream derivation for order-independent parallel sweeps: trial i uses
  // Rng(derive(seed, i)) no matter which worker runs it.
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream) {
    return splitmix64(seed + 0x9e3779b97f4a7c15ull * (stream + 1));
  }

 private:
  static std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
  }

  std::mt19937_64 gen_;
};

}  // namespace pdgeom
