// SPDX-License-Identifier: Apache-2.0
#include "bia/rng.hpp"

#include <cmath>

namespace bia {

uint64_t derive_seed(uint64_t seed, std::initializer_list<uint64_t> path) {
  uint64_t s = splitmix64(seed);
  for (uint64_t p : path) s = splitmix64(s ^ splitmix64(p + 0x632be59bd9b4e019ull));
  return s;
}

double Rng::gauss() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  // Box-Muller; u1 shifted away from 0 so log() is finite.
  double u1 = uniform();
  double u2 = uniform();
  if (u1 <= 0.0) u1 = 0x1.0p-53;
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * kPi * u2;
  spare_ = r * std::sin(a);
  have_spare_ = true;
  return r * std::cos(a);
}

cplx Rng::cgauss() {
  const double re = gauss();
  const double im = gauss();
  return cplx(re, im) * std::sqrt(0.5);
}

int Rng::bit() {
  if (bits_left_ == 0) {
    bit_buf_ = gen_();
    bits_left_ = 64;
  }
  const int b = static_cast<int>(bit_buf_ & 1u);
  bit_buf_ >>= 1;
  --bits_left_;
  return b;
}

}  // namespace bia
