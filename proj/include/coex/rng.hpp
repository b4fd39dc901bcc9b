#pragma once

#include <cstdint>
#include <cmath>
#include <random>

namespace coex {

// SplitMix64 mixer, used to derive seeds for independent streams.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Stream id for (seed, index, purpose). Every consumer of randomness gets its
// own purpose so that enabling one feature never shifts the draws seen by
// another; drops stay reproducible no matter which thread runs them.
inline std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t index,
                                   std::uint64_t purpose = 0) {
  std::uint64_t h = splitmix64(seed ^ 0x8f2da1b7c3e4f5a6ULL);
  h = splitmix64(h ^ splitmix64(index));
  h = splitmix64(h ^ splitmix64(purpose ^ 0x517cc1b727220a95ULL));
  return h;
}

// mt19937_64 plus hand-rolled draw helpers. The standard engine is specified
// bit-exactly; the standard distributions are not, so portable results need
// our own uniform/normal/poisson on top.
class Rng {
 public:
  explicit Rng(std::uint64_t stream_id) : eng_(stream_id) {}

  std::uint64_t next_u64() { return eng_(); }

  // uniform in [0, 1)
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // uniform integer in [lo, hi], inclusive, rejection-sampled (unbiased)
  int uniform_int(int lo, int hi) {
    std::uint64_t n = static_cast<std::uint64_t>(hi - lo) + 1;
    std::uint64_t mask = n - 1;
    mask |= mask >> 1;
    mask |= mask >> 2;
    mask |= mask >> 4;
    mask |= mask >> 8;
    mask |= mask >> 16;
    mask |= mask >> 32;
    for (;;) {
      std::uint64_t v = eng_() & mask;
      if (v < n) return lo + static_cast<int>(v);
    }
  }

  // Marsaglia polar method; the spare deviate is discarded.
  double normal(double mean = 0.0, double sigma = 1.0) {
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    return mean + sigma * u * std::sqrt(-2.0 * std::log(s) / s);
  }

  // Exponential race; cost is O(mean) draws, which is fine for the drop
  // counts used here.
  int poisson(double mean) {
    double acc = 0.0;
    int k = 0;
    for (;;) {
      acc += -std::log1p(-uniform());
      if (acc > mean) return k;
      ++k;
    }
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace coex
