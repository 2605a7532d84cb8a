// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bia/channel.hpp"
#include "bia/types.hpp"

namespace bia {

// Mean squared error vector magnitude between received and ideal
// constellation points.
double aevms(std::span<const cplx> received, std::span<const cplx> ideal);

// Post-processing SINR approximation 1/AEVMS. Zero AEVMS maps to +inf,
// which CDF builders exclude.
double pp_sinr_linear(double aevms_value);
double pp_sinr_db(double aevms_value);

// Bit mismatch fraction.
double ber(std::span<const uint8_t> tx_bits, std::span<const uint8_t> rx_bits);

// Achievable sum rate of the blind-IA scheme with receiver zero forcing:
//   R = sum_k 1/(M+K-1) * E[log2 det(I + (K+M-1)P/(M^2 K) H_k H_k^H)]
// where H_k stacks user k's per-state channel vectors, the first M-1 rows
// scaled by 1/sqrt(K). Averaged over the channel set's subcarriers.
double rate_bia(const ChannelSet& ch, double total_power, int num_users, int num_tx);

// TDMA baseline: (1/K) sum_k E[log2(1 + P |h^[k,1](1)|^2)], single tx
// antenna, fixed antenna state, full power during the user's slots.
double rate_tdma(const ChannelSet& ch, double total_power, int num_users);

// post / pre interference power; throws on pre <= 0. With a per-slot phase
// drift theta across the cancellation gap the noiseless ratio is
// |1 - e^{j theta}|^2 = 4 sin^2(theta/2).
double residual_interference_ratio(double post_power, double pre_power);

// Right-continuous empirical CDF: sorted unique (value, fraction) pairs.
std::vector<std::pair<double, double>> empirical_cdf(std::vector<double> values);

// Gray-QPSK bit error rate over AWGN at symbol SNR gamma: Q(sqrt(gamma)).
double qpsk_ber_awgn(double snr_linear);

// One Monte Carlo trial's metrics; maps 1:1 onto a CSV row.
struct TrialRecord {
  std::string scheme;  // "bia" | "tdma"
  double snr_db = 0.0;
  int snr_index = 0;  // not emitted; sort key
  int trial = 0;
  double sum_rate_bps_hz = 0.0;
  double aevms_u1 = 0.0, aevms_u2 = 0.0;
  double pp_sinr_db_u1 = 0.0, pp_sinr_db_u2 = 0.0;
  double ber_u1 = 0.0, ber_u2 = 0.0;
  double residual_ratio = 0.0;
  int ill_cond_count = 0;
  uint64_t seed = 0;
};

}  // namespace bia
