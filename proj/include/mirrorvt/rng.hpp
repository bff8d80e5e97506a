#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <utility>

namespace mirrorvt {

// Portable random source. The engine is std::mt19937_64, whose output
// sequence is fixed by the standard; the distributions below are written
// out by hand because the <random> distributions are implementation defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform on (0, 1).
  double uniform_open() {
    double u;
    do {
      u = uniform();
    } while (u == 0.0);
    return u;
  }

  // Uniform integer in [0, n).
  std::size_t index(std::size_t n);

  // Standard normal (Marsaglia polar method, spare value cached).
  double normal();

  // Gamma(shape, 1), Marsaglia-Tsang with the U^(1/a) boost for shape < 1.
  double gamma(double shape);

  // +1 or -1 with equal probability.
  double sign() { return (engine_() >> 63) ? 1.0 : -1.0; }

  template <typename RandomIt>
  void shuffle(RandomIt first, RandomIt last) {
    const auto n = static_cast<std::size_t>(last - first);
    for (std::size_t i = n; i > 1; --i) {
      const std::size_t j = index(i);
      using std::swap;
      swap(first[i - 1], first[j]);
    }
  }

  // Independent child stream, derived deterministically from this one.
  Rng split();

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace mirrorvt
