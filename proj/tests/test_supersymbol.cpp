// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "bia/rng.hpp"
#include "bia/supersymbol.hpp"

using namespace bia;

TEST_CASE("schedule matches the two-user supersymbol pattern") {
  const SupersymbolSchedule s = build_schedule();
  // user 1 of the 1-based convention: states (1,2,1); user 2: (1,1,2)
  CHECK(s.state_for(0, 0) == 0);
  CHECK(s.state_for(0, 1) == 1);
  CHECK(s.state_for(0, 2) == 0);
  CHECK(s.state_for(1, 0) == 0);
  CHECK(s.state_for(1, 1) == 0);
  CHECK(s.state_for(1, 2) == 1);

  // each user's alignment block uses two distinct states
  for (int u = 0; u < 2; ++u) {
    const auto slots = s.alignment_slots(u);
    CHECK(s.state_for(u, slots[0]) != s.state_for(u, slots[1]));
  }
  CHECK(s.alignment_slots(0) == std::array<int, 2>{0, 1});
  CHECK(s.alignment_slots(1) == std::array<int, 2>{0, 2});

  // constants: repeated calls return identical values
  const SupersymbolSchedule t = build_schedule();
  CHECK(t.states == s.states);
  CHECK_THROWS_AS(s.state_for(2, 0), std::out_of_range);
}

TEST_CASE("beamforming plan is channel-independent identity/zero stacking") {
  const BeamformingPlan p = build_beamforming_plan();
  CHECK(p.blocks[0] == std::array<Block, 3>{Block::Identity, Block::Identity, Block::Zero});
  CHECK(p.blocks[1] == std::array<Block, 3>{Block::Identity, Block::Zero, Block::Identity});
  const BeamformingPlan q = build_beamforming_plan();
  CHECK(q.blocks == p.blocks);
}

TEST_CASE("precode: single active symbol traces through the blocks") {
  const Vec2 u1{cplx(1, 0), cplx(0, 0)};
  const Vec2 u2{cplx(0, 0), cplx(0, 0)};
  const auto x = precode(u1, u2, 1.0);
  CHECK(x[0] == Vec2{cplx(1, 0), cplx(0, 0)});
  CHECK(x[1] == Vec2{cplx(1, 0), cplx(0, 0)});
  CHECK(x[2] == Vec2{cplx(0, 0), cplx(0, 0)});
}

TEST_CASE("precode: user-2 block structure") {
  const cplx a(0.3, -1.2), b(-0.7, 0.4);
  const auto x = precode(Vec2{cplx(0, 0), cplx(0, 0)}, Vec2{a, b}, 1.0);
  CHECK(x[0] == Vec2{a, b});
  CHECK(x[1] == Vec2{cplx(0, 0), cplx(0, 0)});
  CHECK(x[2] == Vec2{a, b});
}

TEST_CASE("precode is linear and keeps cross slots exactly empty") {
  Rng rng(21);
  for (int it = 0; it < 200; ++it) {
    const Vec2 u1{rng.cgauss(), rng.cgauss()};
    const Vec2 u2{rng.cgauss(), rng.cgauss()};
    const double a = 0.5 + rng.uniform();
    const auto whole = precode(u1, u2, a);
    const auto only1 = precode(u1, Vec2{cplx(0, 0), cplx(0, 0)}, a);
    const auto only2 = precode(Vec2{cplx(0, 0), cplx(0, 0)}, u2, a);
    for (int t = 0; t < 3; ++t)
      for (int j = 0; j < 2; ++j)
        CHECK(std::abs(whole[t][j] - (only1[t][j] + only2[t][j])) < 1e-12);
    // slot 2 carries no user-2 content, slot 3 no user-1 content
    CHECK(only2[1][0] == cplx(0, 0));
    CHECK(only2[1][1] == cplx(0, 0));
    CHECK(only1[2][0] == cplx(0, 0));
    CHECK(only1[2][1] == cplx(0, 0));
  }
  CHECK_THROWS_AS(precode(Vec2{}, Vec2{}, -1.0), std::invalid_argument);
}

// Brute-force oracle for the supersymbol power constant: average
// ||x(t)||^2 over the three slots for random unit-power QPSK entries.
TEST_CASE("supersymbol power: Monte Carlo oracle fixes the constant at 8/3") {
  Rng rng(33);
  const double amp = 1.0 / std::sqrt(2.0);
  double acc = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    Vec2 u1, u2;
    for (int s = 0; s < 2; ++s) {
      u1[s] = cplx(rng.bit() ? -amp : amp, rng.bit() ? -amp : amp);
      u2[s] = cplx(rng.bit() ? -amp : amp, rng.bit() ? -amp : amp);
    }
    const auto x = precode(u1, u2, 1.0);
    double p = 0.0;
    for (int t = 0; t < 3; ++t) p += std::norm(x[t][0]) + std::norm(x[t][1]);
    acc += p / 3.0;
  }
  const double mc = acc / n;
  CHECK(mc == doctest::Approx(8.0 / 3.0).epsilon(0.01));           // oracle
  CHECK(supersymbol_power(1.0) == doctest::Approx(mc).epsilon(0.01));
  CHECK(supersymbol_power(1.0) == doctest::Approx(8.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("supersymbol power: zero scale and quadratic scaling") {
  CHECK(supersymbol_power(0.0) == 0.0);
  CHECK(supersymbol_power(2.0) == doctest::Approx(4.0 * supersymbol_power(1.0)).epsilon(1e-12));
}

TEST_CASE("power_scale_for solves the average power constraint") {
  for (double p : {0.5, 1.0, 10.0, 1234.5}) {
    CHECK(supersymbol_power(power_scale_for(p)) == doctest::Approx(p).epsilon(1e-12));
  }
  CHECK(power_scale_for(0.0) == 0.0);
}
