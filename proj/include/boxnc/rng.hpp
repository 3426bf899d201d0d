#ifndef BOXNC_RNG_HPP
#define BOXNC_RNG_HPP

#include <cstdint>
#include <random>

namespace boxnc {

// Deterministic random source. std::mt19937_64 has a fully specified output
// sequence, and the double mapping below avoids the library-dependent
// std::uniform_real_distribution, so identical seeds give identical streams
// on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1).
  double next_double() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  // Uniform integer in [0, n), n >= 1.
  std::uint64_t next_index(std::uint64_t n) { return engine_() % n; }

  int uniform_int(int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(next_index(static_cast<std::uint64_t>(hi - lo + 1)));
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace boxnc

#endif
