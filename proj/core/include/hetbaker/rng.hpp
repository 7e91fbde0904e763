#pragma once

#include <cstdint>
#include <random>

namespace hetbaker {

// Seed plus stream index; distinct streams give independent deterministic
// generators, so experiments can fan out and stay bit-reproducible.
struct Seed {
  std::uint64_t value = 0;
  std::uint64_t stream = 0;
};

class Rng {
 public:
  explicit Rng(Seed seed) {
    std::uint64_t x = seed.value + 0x9E3779B97F4A7C15ull * (seed.stream + 1);
    std::uint64_t a = splitmix(x);
    std::uint64_t b = splitmix(x);
    std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                      static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
    gen_.seed(seq);
  }

  std::uint64_t next() { return gen_(); }

  // Unbiased integer in [0, n) by rejection; avoids the distribution classes,
  // whose outputs are not pinned down by the standard.
  std::uint64_t below(std::uint64_t n) {
    std::uint64_t threshold = (0 - n) % n;
    for (;;) {
      std::uint64_t r = next();
      if (r >= threshold) return r % n;
    }
  }

  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  static std::uint64_t splitmix(std::uint64_t& s) {
    std::uint64_t z = (s += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  std::mt19937_64 gen_;
};

}  // namespace hetbaker
