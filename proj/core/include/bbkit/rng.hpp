#pragma once

#include <cstdint>
#include <random>

#include "bbkit/exact.hpp"
#include "bbkit/weights_core.hpp"

namespace bbkit {

// Deterministic random source. Values are derived from raw mt19937_64 bits
// with explicit arithmetic, so sequences do not depend on the standard
// library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }
  double uniform01() {  // [0, 1), 53-bit resolution
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  double normal();  // Box-Muller with a cached spare
  long long uniform_int(long long lo, long long hi);  // inclusive bounds
  bool coin(double p = 0.5) { return uniform01() < p; }

  // Small exact values for property trials.
  Rational small_rational(int max_abs_num, int max_den);
  ExactScalar gaussian_rational(int max_abs_num, int max_den);
  ExactScalar nonzero_gaussian_rational(int max_abs_num, int max_den);
  WeightVector weights(int n, long long bound);  // entries in [-bound, bound]
  // Exact point; each coordinate is zero with probability zero_p.
  PointE point(int n, double zero_p, int max_abs_num, int max_den);
  // Float point with the same zero-pattern convention.
  PointC pointc(int n, double zero_p, double scale);

 private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace bbkit
