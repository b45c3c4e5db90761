#ifndef SIREST_RNG_HPP
#define SIREST_RNG_HPP

#include <cmath>
#include <cstdint>
#include <limits>

namespace sirest {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

// SplitMix64 finalizer. Strong enough to key independent substreams.
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Deterministic substream id from a master seed and task indices. Results
// keyed this way do not depend on thread scheduling.
inline std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t a,
                                   std::uint64_t b = 0) {
  std::uint64_t h = seed;
  h = mix64(h + kGolden * (a + 1));
  h = mix64(h + kGolden * (b + 1));
  return h;
}

// Seedable, splittable 64-bit generator (SplitMix64).
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += kGolden);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform on (0, 1]; never 0, so it is safe under log().
  double uniform() { return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53; }

  // Exponential waiting time. Rate 0 means the event never fires.
  double exponential(double rate) {
    if (rate <= 0.0) return std::numeric_limits<double>::infinity();
    return -std::log(uniform()) / rate;
  }

  // Unbiased uniform integer in [0, n), n >= 1 (Lemire multiply-shift).
  std::uint64_t below(std::uint64_t n) {
    unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * n;
    auto lo = static_cast<std::uint64_t>(m);
    if (lo < n) {
      const std::uint64_t t = (0 - n) % n;
      while (lo < t) {
        m = static_cast<unsigned __int128>(next_u64()) * n;
        lo = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  bool bernoulli(double p) { return uniform() <= p; }

  // Child stream; independent of draws made from this one afterwards.
  Rng split(std::uint64_t index) const { return Rng(derive_stream(state_, index)); }

 private:
  std::uint64_t state_;
};

}  // namespace sirest

#endif  // SIREST_RNG_HPP
