// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>

#include "bia/rng.hpp"
#include "bia/types.hpp"

namespace bia {

struct ChannelModelConfig {
  int num_users = 2;
  int num_states = 2;
  int num_tx = 2;
  int num_subcarriers = 48;
  double inter_state_correlation = 0.0;  // rho in [0, 1]
  double phase_drift_per_slot_deg = 0.0;
  uint64_t rng_seed = 0;

  void validate() const;  // throws std::invalid_argument
};

struct NoiseConfig {
  double variance = 1.0;  // power per complex sample

  void validate() const;
};

// Complex channel gains indexed by (user, antenna state, tx antenna,
// subcarrier). One entry is the flat gain from one transmit antenna to one
// receiver while that receiver's antenna is in the given state.
class ChannelSet {
 public:
  ChannelSet(int num_users, int num_states, int num_tx, int num_subcarriers);

  int num_users() const { return users_; }
  int num_states() const { return states_; }
  int num_tx() const { return tx_; }
  int num_subcarriers() const { return sc_; }

  cplx at(int user, int state, int tx, int sc) const { return a_[idx(user, state, tx, sc)]; }
  cplx& at(int user, int state, int tx, int sc) { return a_[idx(user, state, tx, sc)]; }

  // Inner product h^[user](state) . x over transmit antennas.
  cplx dot(int user, int state, int sc, std::span<const cplx> x) const;

  std::span<const cplx> raw() const { return a_; }
  std::span<cplx> raw() { return a_; }

  bool all_finite() const;

 private:
  std::size_t idx(int user, int state, int tx, int sc) const;  // bounds-checked

  int users_, states_, tx_, sc_;
  cvec a_;
};

// Draws zero-mean unit-variance circularly-symmetric Gaussian gains.
// Entries for the same (user, tx, subcarrier) across any two states have
// complex correlation rho; everything else is independent. Construction:
//   h_state = sqrt(rho) * c + sqrt(1 - rho) * w_state
// with c shared across states and w_state independent.
// Draw order (fixed, part of the determinism contract): for each user,
// tx antenna, subcarrier: one draw for c, then one w per state.
ChannelSet draw_channels(const ChannelModelConfig& cfg, Rng& rng);

// Rotates every gain by exp(j * slot_index * theta). Magnitudes unchanged.
ChannelSet apply_slot_phase_drift(const ChannelSet& ch, int slot_index, double theta_deg);

// One use of the channel: h^[user](state) . x + z, with z ~ CN(0, variance).
// No noise is drawn when variance == 0.
cplx transmit_through(const ChannelSet& ch, int user, int state, int sc,
                      std::span<const cplx> x, const NoiseConfig& noise, Rng& rng);

// Measured-channel ingestion: text table, one row per coefficient,
// columns "user state tx_antenna subcarrier real imag" with 1-based
// indices. '#' starts a comment. Every index combination must be present.
ChannelSet load_channel_table(std::istream& in);
ChannelSet load_channel_table(const std::string& path);

}  // namespace bia
