#pragma once

#include <cstdint>

namespace cswmt {

// splitmix64 generator. All randomness in the toolkit flows through this so
// that outputs are bit-identical across platforms, standard libraries and
// worker counts.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Unbiased draw from [0, n). n >= 1.
  std::uint64_t uniform(std::uint64_t n) {
    const std::uint64_t limit = ~0ULL - ~0ULL % n;
    std::uint64_t x;
    do {
      x = next_u64();
    } while (x >= limit);
    return x % n;
  }

  // Uniform in [0, 1) with 53-bit resolution.
  double uniform_real() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

// Derives the generator for one record from the run seed and the record id.
// Records can therefore be processed in any order, by any number of workers,
// without changing the output.
inline Rng record_rng(std::uint64_t seed, std::uint64_t record_id) {
  Rng mix(seed ^ (record_id + 1) * 0x9E3779B97F4A7C15ULL);
  return Rng(mix.next_u64());
}

}  // namespace cswmt
