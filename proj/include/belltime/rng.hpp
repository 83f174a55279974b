#pragma once

#include <cstdint>
#include <random>

namespace belltime {

// Deterministic 64-bit mixer, used to derive independent per-chunk seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// mt19937_64 with hand-rolled uniform conversions.  The standard library's
// distributions are implementation-defined; these conversions keep streams
// bit-identical across toolchains.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  bool bernoulli(double p) { return uniform01() < p; }

private:
  std::mt19937_64 engine_;
};

inline std::uint64_t derive_chunk_seed(std::uint64_t master_seed, std::uint64_t chunk_index) {
  return splitmix64(master_seed ^ splitmix64(chunk_index + 1));
}

}  // namespace belltime
