#pragma once

#include <cmath>
#include <cstdint>

namespace dropaudit {

// splitmix64 finalizer; the basis of every random draw in the project.
// Counter-based use (hash of seed and draw index) keeps Monte Carlo results
// independent of worker count: the value of draw i depends on i, not on
// which thread produced it.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t mix_keys(std::uint64_t a, std::uint64_t b) {
  return splitmix64(a ^ (0x9E3779B97F4A7C15ULL + b + (a << 6) + (a >> 2)));
}

inline double u64_to_unit(std::uint64_t v) {
  return static_cast<double>(v >> 11) * 0x1.0p-53;  // [0,1), 53 bits
}

// Keyed counter generator: uniform_at(i) is a pure function of (key, i).
struct CounterRng {
  std::uint64_t key = 0;
  double uniform_at(std::uint64_t index) const { return u64_to_unit(splitmix64(key ^ splitmix64(index))); }
  bool bernoulli_at(std::uint64_t index, double p_true) const { return uniform_at(index) < p_true; }
};

// Sequential stream for dataset generation and per-epoch mask sampling.
// Not std::mt19937: distributions must be bit-identical across standard
// libraries for the byte-level determinism contract.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(splitmix64(seed ^ 0xA02B'D4E6'73C1'95F8ULL)) {}

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t x = state_;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
  }

  double uniform() { return u64_to_unit(next_u64()); }

  bool bernoulli(double p_true) { return uniform() < p_true; }

  // Box-Muller, spare discarded so the draw count per normal is fixed.
  double normal() {
    double u1 = uniform();
    while (u1 == 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
  }

 private:
  std::uint64_t state_;
};

}  // namespace dropaudit
