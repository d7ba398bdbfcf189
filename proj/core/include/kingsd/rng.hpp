#pragma once

#include <cstdint>
#include <random>

namespace kingsd {

/// Identifies a reproducible random stream. Identical (seed, stream)
/// always reproduces identical draws; disjoint stream ids give draws
/// safe to use from concurrent workers.
struct RngStream {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

namespace detail {
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}
}  // namespace detail

/// Derives a child stream id by folding a tag into the parent stream.
inline RngStream derive(RngStream base, std::uint64_t tag) {
  base.stream = detail::splitmix64(base.stream ^ detail::splitmix64(tag));
  return base;
}

inline RngStream derive(RngStream base, std::uint64_t a, std::uint64_t b) {
  return derive(derive(base, a), b);
}

inline RngStream derive(RngStream base, std::uint64_t a, std::uint64_t b,
                        std::uint64_t c) {
  return derive(derive(base, a, b), c);
}

/// Stateful generator view of an RngStream.
class RandomStream {
 public:
  explicit RandomStream(RngStream s)
      : eng_(detail::splitmix64(s.seed) ^ detail::splitmix64(~s.stream)) {}

  double normal() { return gauss_(eng_); }
  double uniform() { return unif_(eng_); }
  int pm1() { return (eng_() & 1u) ? 1 : -1; }

 private:
  std::mt19937_64 eng_;
  std::normal_distribution<double> gauss_{0.0, 1.0};
  std::uniform_real_distribution<double> unif_{0.0, 1.0};
};

}  // namespace kingsd
