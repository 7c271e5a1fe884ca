#ifndef NECSIM_RNG_HPP
#define NECSIM_RNG_HPP

#include <cstdint>
#include <random>

namespace necsim {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seeded random source. Bounded draws use rejection sampling on raw
/// 64-bit output so the stream is identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), gen_(splitmix64(seed)) {}

  /// Independent stream derived from this seed and a stream index.
  Rng derived(std::uint64_t stream) const {
    return Rng(splitmix64(seed_ ^ splitmix64(stream + 0x51ed2701)));
  }

  std::uint64_t next_u64() { return gen_(); }

  /// Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound) {
    if (bound <= 1) return 0;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t v;
    do {
      v = gen_();
    } while (v >= limit);
    return v % bound;
  }

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 gen_;
};

}  // namespace necsim

#endif
