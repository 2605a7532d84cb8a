// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <optional>
#include <vector>

#include "bia/channel.hpp"
#include "bia/constellation.hpp"
#include "bia/rng.hpp"
#include "bia/supersymbol.hpp"
#include "bia/types.hpp"

namespace bia {

// One user's received samples over a whole supersymbol: y per
// (slot, subcarrier, symbol position within slot).
struct SupersymbolObservation {
  int num_subcarriers = 0;
  int symbols_per_slot = 0;
  std::array<cvec, 3> slots;  // slots[t][f * symbols_per_slot + n]

  cplx& at(int slot, int f, int n);
  cplx at(int slot, int f, int n) const;
  static SupersymbolObservation make(int num_subcarriers, int symbols_per_slot);
};

// Slot arithmetic that strips the aligned interference:
//   user 0: (y(0) - y(2), y(1));  user 1: (y(0) - y(1), y(2)).
std::array<cplx, 2> cancel_pair(cplx y0, cplx y1, cplx y2, int user);

// Full-grid version; out[0]/out[1] hold the two post-cancellation
// components per (f, n), laid out like the observation slots.
std::array<cvec, 2> cancel_interference(const SupersymbolObservation& obs, int user);

// 2x2 effective channel for one (user, subcarrier): row r is the channel
// vector of the user's r-th scheduled state.
struct EffectiveChannel {
  std::array<std::array<cplx, 2>, 2> row;  // row[r][tx]

  double condition_number() const;  // 2-norm, via the closed-form 2x2 SVD
};

EffectiveChannel build_effective_channel(const ChannelSet& est, int user,
                                         const SupersymbolSchedule& schedule, int subcarrier);

// Zero-forcing detection: H^-1 * y when cond(H) <= cond_threshold, empty
// otherwise. Callers count rejected subcarriers instead of aborting.
std::optional<Vec2> zf_detect(const Vec2& y_eff, const EffectiveChannel& H, double cond_threshold);

struct LinkConfig {
  double snr_db = 20.0;        // P / noise_variance with unit-variance channels
  double noise_variance = 1.0;  // 0 for noiseless runs
  int symbols_per_slot = 16;    // N
  int num_subcarriers = 48;
  Modulation modulation = Modulation::Qpsk;
  bool packet_granularity = false;  // true: per-slot phase drift active
  double drift_deg_per_slot = 0.0;
  double cond_threshold = 1e6;

  double total_power() const;  // P
  void validate() const;
};

// Per-(user, stream, subcarrier) measurement unit for binned studies.
struct StreamRecord {
  int user = 0;
  int stream = 0;
  int subcarrier = 0;
  double aevms = 0.0;
  long bits = 0;
  long bit_errors = 0;
};

struct LinkResult {
  std::array<double, 2> aevms_user{};
  std::array<double, 2> ber_user{};
  std::array<long, 2> bits_user{};
  std::array<long, 2> bit_errors_user{};
  // Interference power before/after slot cancellation, tracked through the
  // interference-only signal component (superposition), per user.
  std::array<double, 2> residual_pre_user{};
  std::array<double, 2> residual_post_user{};
  int ill_conditioned_count = 0;
  std::vector<StreamRecord> stream_records;

  double pp_sinr_db(int user) const;
  // Leakage ratio across a one-slot drift gap (user 1's adjacent-slot
  // cancellation); user 0's two-slot gap is available per user.
  double residual_ratio_adjacent() const;
  double residual_ratio(int user) const;
};

// Blind-IA link over one supersymbol frame: precode -> state-scheduled
// transmission per slot -> interference cancellation -> zero-forcing ->
// demap, independently per subcarrier and symbol position. CSI is the
// drift-free channel (estimates are made before the payload slots).
LinkResult run_bia_link(const ChannelSet& ch, const SupersymbolSchedule& schedule,
                        const LinkConfig& cfg, Rng& data_rng, Rng& noise_rng,
                        bool collect_streams = false);

// TDMA baseline: each user gets one slot of the same duration, single
// transmit antenna, fixed antenna state, full power, SISO zero-forcing.
LinkResult run_tdma_link(const ChannelSet& ch, const LinkConfig& cfg, Rng& data_rng,
                         Rng& noise_rng, bool collect_streams = false);

}  // namespace bia
