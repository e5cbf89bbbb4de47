#pragma once

#include <cstdint>
#include <initializer_list>

#include "kursync/types.hpp"

namespace kursync {

// SplitMix64 generator (public-domain mixing constants).  It is used both to
// draw samples and to derive independent child streams from a master seed, so
// that every sampled instance has a reproducible stream regardless of how the
// surrounding work is ordered or parallelized.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform on the open interval (0, 1): 53-bit mantissa, offset by half an
  // ulp so neither endpoint can be returned.
  Real next_open01() {
    return (static_cast<Real>(next() >> 11) + 0.5) * 0x1.0p-53;
  }

  Real uniform(Real lo, Real hi) { return lo + (hi - lo) * next_open01(); }

 private:
  std::uint64_t state_;
};

inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Derives a child seed from (master, path...).  The fold is order-sensitive,
// so (a, b) and (b, a) give unrelated streams.
inline std::uint64_t derive_seed(std::uint64_t master,
                                 std::initializer_list<std::uint64_t> path) {
  std::uint64_t s = mix64(master + 0x9e3779b97f4a7c15ULL);
  for (std::uint64_t word : path) {
    s = mix64(s + 0x9e3779b97f4a7c15ULL + word);
  }
  return s;
}

}  // namespace kursync
