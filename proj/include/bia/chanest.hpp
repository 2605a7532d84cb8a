// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bia/channel.hpp"
#include "bia/types.hpp"

namespace bia {

// Time-orthogonal pilot sounding: transmit antennas sound one at a time,
// the whole antenna round repeated once per receiver state, `reps` pilot
// symbols per (state, tx) pair. Pilot values are constant-modulus with the
// given amplitude and known to both ends.
class PilotPlan {
 public:
  PilotPlan(int num_states, int num_tx, int reps, int num_subcarriers, double amplitude = 1.0,
            uint64_t seed = 0x70696c6f74ull);

  int num_states() const { return states_; }
  int num_tx() const { return tx_; }
  int reps() const { return reps_; }
  int num_subcarriers() const { return sc_; }
  double amplitude() const { return amp_; }

  // Transmitted pilot value; the same grid is re-sent in every state block.
  cplx symbol(int tx, int rep, int f) const;

  // Sum of |pilot|^2 per estimated coefficient.
  double energy_per_coefficient() const { return reps_ * amp_ * amp_; }

 private:
  int states_, tx_, reps_, sc_;
  double amp_;
  cvec symbols_;  // [(tx * reps + rep) * sc + f]
};

// Received pilot samples for one receiver, per (state, tx, rep, subcarrier).
class PilotObservations {
 public:
  PilotObservations(int num_states, int num_tx, int reps, int num_subcarriers);

  // One block = all reps * subcarriers observations for a (state, tx) pair.
  void set_block(int state, int tx, std::span<const cplx> y);
  bool covered(int state, int tx) const;
  cplx get(int state, int tx, int rep, int f) const;

  int num_states() const { return states_; }
  int num_tx() const { return tx_; }
  int reps() const { return reps_; }
  int num_subcarriers() const { return sc_; }

 private:
  int states_, tx_, reps_, sc_;
  cvec y_;
  std::vector<bool> covered_;
};

// Per-subcarrier least-squares estimates
//   h_hat = sum_rep y * conj(p) / sum_rep |p|^2,
// indexed [(state * num_tx + tx) * num_subcarriers + f]. Throws
// std::invalid_argument when any (state, tx) pair has no observations.
cvec estimate_channels(const PilotPlan& plan, const PilotObservations& obs);

// Writes one receiver's estimates into the matching ChannelSet entries.
void fill_user_estimates(ChannelSet& est, int user, std::span<const cplx> h_hat);

}  // namespace bia
