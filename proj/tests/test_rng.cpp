// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "bia/rng.hpp"

using namespace bia;

TEST_CASE("derive_seed is a pure function of seed and path") {
  CHECK(derive_seed(1, {2, 3}) == derive_seed(1, {2, 3}));
  CHECK(derive_seed(1, {2, 3}) != derive_seed(1, {3, 2}));
  CHECK(derive_seed(1, {2}) != derive_seed(2, {2}));
  CHECK(derive_seed(1, {}) != 1);
}

TEST_CASE("identical seeds give identical streams") {
  Rng a(42), b(42);
  for (int i = 0; i < 1000; ++i) {
    CHECK(a.next_u64() == b.next_u64());
  }
  Rng c(42), d(42);
  for (int i = 0; i < 100; ++i) {
    CHECK(c.gauss() == d.gauss());
    CHECK(c.cgauss() == d.cgauss());
  }
}

TEST_CASE("gauss moments") {
  Rng rng(7);
  const int n = 200000;
  double s = 0.0, s2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double g = rng.gauss();
    s += g;
    s2 += g * g;
  }
  CHECK(std::abs(s / n) < 0.01);
  CHECK(s2 / n == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("cgauss is CN(0,1)") {
  Rng rng(9);
  const int n = 100000;
  double p = 0.0;
  cplx mean(0.0, 0.0);
  for (int i = 0; i < n; ++i) {
    const cplx z = rng.cgauss();
    p += std::norm(z);
    mean += z;
  }
  CHECK(p / n == doctest::Approx(1.0).epsilon(0.01));
  CHECK(std::abs(mean) / n < 0.01);
}

TEST_CASE("bits are balanced") {
  Rng rng(11);
  int ones = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) ones += rng.bit();
  CHECK(std::abs(ones / static_cast<double>(n) - 0.5) < 0.01);
}
