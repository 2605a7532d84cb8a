// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>

#include "bia/types.hpp"

namespace bia {

// Two-user, three-slot supersymbol. Antenna states are 0-based here:
// state 0 and state 1 are the two reconfigurable-antenna states a user
// cycles through over one supersymbol.
struct SupersymbolSchedule {
  // states[user][slot]
  std::array<std::array<int, 3>, 2> states;

  int state_for(int user, int slot) const;

  // The two slots carrying a user's own streams in distinct states, in the
  // order that defines the rows of its effective channel matrix.
  // User 0 listens in states (0,1) during slots (0,1); user 1 in states
  // (0,1) during slots (0,2).
  std::array<int, 2> alignment_slots(int user) const;
};

// Fixed pattern: user 0 -> states (0,1,0), user 1 -> states (0,0,1).
SupersymbolSchedule build_schedule();

enum class Block : uint8_t { Identity, Zero };

// Channel-independent beamforming: per user an ordered triple of 2x2
// blocks stacked over the three slots. Only identity/zero tags, never
// channel values.
struct BeamformingPlan {
  std::array<std::array<Block, 3>, 2> blocks;  // blocks[user][slot]
};

// User 0: (I, I, 0); user 1: (I, 0, I).
BeamformingPlan build_beamforming_plan();

using Vec2 = std::array<cplx, 2>;

// Per-slot transmit vectors for one symbol position:
//   x(0) = a*(u1 + u2), x(1) = a*u1, x(2) = a*u2.
std::array<Vec2, 3> precode(const Vec2& u1, const Vec2& u2, double power_scale);

// Average E[||x(t)||^2] over the three slots for unit-power symbol entries:
// slot powers (4, 2, 2) * a^2, mean (8/3) * a^2.
double supersymbol_power(double power_scale);

// Scale solving supersymbol_power(a) == total_power.
double power_scale_for(double total_power);

}  // namespace bia
