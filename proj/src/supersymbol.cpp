// SPDX-License-Identifier: Apache-2.0
#include "bia/supersymbol.hpp"

#include <cmath>
#include <stdexcept>

namespace bia {

int SupersymbolSchedule::state_for(int user, int slot) const {
  if (user < 0 || user > 1 || slot < 0 || slot > 2)
    throw std::out_of_range("SupersymbolSchedule: user in {0,1}, slot in {0,1,2}");
  return states[user][slot];
}

std::array<int, 2> SupersymbolSchedule::alignment_slots(int user) const {
  if (user < 0 || user > 1) throw std::out_of_range("SupersymbolSchedule: user in {0,1}");
  return user == 0 ? std::array<int, 2>{0, 1} : std::array<int, 2>{0, 2};
}

SupersymbolSchedule build_schedule() {
  SupersymbolSchedule s;
  s.states[0] = {0, 1, 0};
  s.states[1] = {0, 0, 1};
  return s;
}

BeamformingPlan build_beamforming_plan() {
  BeamformingPlan p;
  p.blocks[0] = {Block::Identity, Block::Identity, Block::Zero};
  p.blocks[1] = {Block::Identity, Block::Zero, Block::Identity};
  return p;
}

std::array<Vec2, 3> precode(const Vec2& u1, const Vec2& u2, double power_scale) {
  if (!(power_scale >= 0.0)) throw std::invalid_argument("precode: power_scale must be >= 0");
  const double a = power_scale;
  return {Vec2{a * (u1[0] + u2[0]), a * (u1[1] + u2[1])},
          Vec2{a * u1[0], a * u1[1]},
          Vec2{a * u2[0], a * u2[1]}};
}

double supersymbol_power(double power_scale) {
  return (8.0 / 3.0) * power_scale * power_scale;
}

double power_scale_for(double total_power) {
  if (!(total_power >= 0.0)) throw std::invalid_argument("power_scale_for: total_power must be >= 0");
  return std::sqrt(3.0 * total_power / 8.0);
}

}  // namespace bia
