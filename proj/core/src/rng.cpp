#include "bbkit/rng.hpp"

#include <cmath>

namespace bbkit {

double Rng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = uniform01(), u2 = uniform01();
  while (u1 <= 0.0) u1 = uniform01();
  double r = std::sqrt(-2.0 * std::log(u1));
  double a = 2.0 * M_PI * u2;
  spare_ = r * std::sin(a);
  have_spare_ = true;
  return r * std::cos(a);
}

long long Rng::uniform_int(long long lo, long long hi) {
  auto span = static_cast<unsigned long long>(hi - lo) + 1ull;
  return lo + static_cast<long long>(next_u64() % span);
}

Rational Rng::small_rational(int max_abs_num, int max_den) {
  long long num = uniform_int(-max_abs_num, max_abs_num);
  long long den = uniform_int(1, max_den);
  return Rational(num, den);
}

ExactScalar Rng::gaussian_rational(int max_abs_num, int max_den) {
  return ExactScalar(small_rational(max_abs_num, max_den),
                     small_rational(max_abs_num, max_den));
}

ExactScalar Rng::nonzero_gaussian_rational(int max_abs_num, int max_den) {
  for (;;) {
    ExactScalar s = gaussian_rational(max_abs_num, max_den);
    if (!s.is_zero()) return s;
  }
}

WeightVector Rng::weights(int n, long long bound) {
  WeightVector w;
  w.l.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) w.l.push_back(uniform_int(-bound, bound));
  return w;
}

PointE Rng::point(int n, double zero_p, int max_abs_num, int max_den) {
  PointE z(static_cast<std::size_t>(n));
  for (auto& c : z)
    c = coin(zero_p) ? ExactScalar(0) : nonzero_gaussian_rational(max_abs_num, max_den);
  return z;
}

PointC Rng::pointc(int n, double zero_p, double scale) {
  PointC z(static_cast<std::size_t>(n));
  for (auto& c : z) {
    if (coin(zero_p)) {
      c = {0.0, 0.0};
    } else {
      c = {scale * (uniform01() * 2.0 - 1.0), scale * (uniform01() * 2.0 - 1.0)};
      if (c == std::complex<double>(0.0, 0.0)) c = {scale, 0.0};
    }
  }
  return z;
}

}  // namespace bbkit
