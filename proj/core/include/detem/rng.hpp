#ifndef DETEM_RNG_HPP
#define DETEM_RNG_HPP

#include <cmath>
#include <cstdint>

namespace detem {

/// Counter-based generator built on the SplitMix64 mixing function.
/// draw i of stream (seed, stream) is mix(mix(seed) ^ mix(stream) + i), so
/// identical (seed, stream, counter) triples give identical values on any
/// platform. Streams are what replicate workers use to stay independent.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
      : key_(mix(mix(seed + 0x9e3779b97f4a7c15ULL) ^ mix(stream + 0xbf58476d1ce4e5b9ULL))),
        counter_(0) {}

  std::uint64_t next_u64() { return mix(key_ + 0x9e3779b97f4a7c15ULL * ++counter_); }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Standard normal via Box-Muller; consumes two uniforms per pair.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    double u2 = uniform();
    // keep u1 away from 0 so the log stays finite
    u1 = u1 > 0x1.0p-53 ? u1 : 0x1.0p-53;
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  /// Beta(alpha, 1) via inverse CDF u^(1/alpha).
  double beta_alpha_one(double alpha) { return std::pow(uniform(), 1.0 / alpha); }

  /// Index k with probability weights[k]; weights must sum to ~1.
  template <typename Vec>
  int categorical(const Vec& weights) {
    const double u = uniform();
    double acc = 0.0;
    const int n = static_cast<int>(weights.size());
    for (int k = 0; k < n; ++k) {
      acc += weights[k];
      if (u < acc) return k;
    }
    return n - 1;
  }

 private:
  static std::uint64_t mix(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
  }

  std::uint64_t key_;
  std::uint64_t counter_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace detem

#endif
