// Apache License, Version 2.0, refer to LICENSE.txt
#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace synmorph {

/// splitmix64 finalizer; used to derive independent streams from one seed.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Seeded generator with portable bounded draws. std::mt19937_64 output is
// fully specified by the standard; the distributions are not, so bounded
// sampling is done here by rejection instead of <random> distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(mix64(seed)) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform draw from [0, n). n must be > 0.
  std::size_t below(std::size_t n) {
    const std::uint64_t bound = n;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t v = engine_();
    while (v >= limit) v = engine_();
    return static_cast<std::size_t>(v % bound);
  }

  /// Uniform draw from [lo, hi] inclusive.
  std::size_t range(std::size_t lo, std::size_t hi) { return lo + below(hi - lo + 1); }

  bool coin() { return (next() & 1) != 0; }

  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[below(v.size())];
  }

 private:
  std::mt19937_64 engine_;
};

/// Derives a per-item generator that is stable under any processing order.
inline Rng derive_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  return Rng(mix64(seed ^ mix64(stream * 0x9E3779B97F4A7C15ULL + index)));
}

}  // namespace synmorph
