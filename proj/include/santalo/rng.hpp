#pragma once

#include <cstdint>

#include "santalo/geometry.hpp"

namespace santalo {

// Deterministic generator.  Distribution helpers are hand-rolled from the
// raw 64-bit stream so that identical seeds give identical bodies on every
// platform and standard-library version.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}

  std::uint64_t next_u64() {
    // xorshift* variant; period 2^64 - 1.
    std::uint64_t x = state_;
    x ^= x >> 12;
    x ^= x << 25;
    x ^= x >> 27;
    state_ = x;
    return x * 0x2545f4914f6cdd1dULL;
  }

  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  int uniform_int(int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  double normal() {
    // Box-Muller; one value per call keeps the stream easy to reason about.
    double u1 = uniform01(), u2 = uniform01();
    if (u1 < 1e-300) u1 = 1e-300;
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

  Vec unit_vector(int n) {
    while (true) {
      Vec v(n);
      for (int i = 0; i < n; ++i) v[i] = normal();
      double norm = v.norm();
      if (norm > 1e-8) return v / norm;
    }
  }

  template <typename T>
  void shuffle(std::vector<T>& xs) {
    for (int i = static_cast<int>(xs.size()) - 1; i > 0; --i) {
      int j = uniform_int(0, i);
      std::swap(xs[i], xs[static_cast<size_t>(j)]);
    }
  }

private:
  std::uint64_t state_;
};

}  // namespace santalo
