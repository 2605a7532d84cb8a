// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

#include "bia/types.hpp"

namespace bia {

// splitmix64 finalizer; used to hash seed-derivation paths.
constexpr uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Derives a child seed from a parent seed and a path of indices. Pure
// function of its arguments, so any trial can be reproduced in isolation
// no matter which worker ran it or in what order.
uint64_t derive_seed(uint64_t seed, std::initializer_list<uint64_t> path);

// Deterministic random source. Uniforms come straight from mt19937_64 and
// Gaussians from Box-Muller on those uniforms, so sequences are
// bit-identical across platforms and standard libraries.
class Rng {
 public:
  explicit Rng(uint64_t seed) : gen_(seed) {}

  uint64_t next_u64() { return gen_(); }

  // Uniform on [0, 1) with 53-bit resolution.
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  // Standard normal N(0, 1).
  double gauss();

  // Circularly-symmetric complex Gaussian CN(0, 1): each component N(0, 1/2).
  cplx cgauss();

  // Single fair bit (buffered).
  int bit();

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
  uint64_t bit_buf_ = 0;
  int bits_left_ = 0;
};

}  // namespace bia
