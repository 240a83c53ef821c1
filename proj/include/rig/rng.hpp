#pragma once

#include <cstdint>
#include <random>

namespace rig {

// SplitMix64 mixing step.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Stream `index` of a master seed.  This is the documented split function for
// per-trial generators: stream seeds are a pure function of (master, index),
// so parallel trials reproduce bit-for-bit regardless of scheduling.
constexpr std::uint64_t derive_stream_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(master + index * 0x9e3779b97f4a7c15ULL);
}

// Seeded generator with portable draw helpers.  mt19937_64 output is fully
// specified by the standard; the helpers below avoid <random> distributions,
// whose streams differ across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t u64() { return eng_(); }

  // Uniform double in [0, 1) with 53 random bits.
  double canonical() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return canonical() < p; }

  // Uniform integer in [0, k), k >= 1.  Rejection sampling, no modulo bias.
  std::uint64_t below(std::uint64_t k) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % k;
    std::uint64_t x;
    do {
      x = eng_();
    } while (x >= limit);
    return x % k;
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace rig
