#pragma once

#include <cstdint>
#include <random>

#include "angled/abelian.hpp"

namespace angled {

/// Seeded generator whose draws are identical on every platform
/// (std::uniform_int_distribution is implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, n) by rejection; n > 0.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do x = engine_();
    while (x >= limit);
    return x % n;
  }

  /// Uniform in [0, bound] for arbitrary-precision bound >= 0.
  Integer up_to(const Integer& bound) {
    const Integer span = bound + 1;
    if (span <= UINT64_MAX) return Integer(below(static_cast<std::uint64_t>(span)));
    const std::size_t bits = msb(span) + 1 + 64;
    Integer x = 0;
    for (std::size_t got = 0; got < bits; got += 64) x = (x << 64) | Integer(engine_());
    return x % span;
  }

 private:
  std::mt19937_64 engine_;
};

/// splitmix64 finalizer, used to derive independent sub-seeds.
inline std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace angled
