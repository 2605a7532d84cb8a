// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <vector>

#include "bia/constellation.hpp"
#include "bia/types.hpp"

namespace bia {

struct OfdmConfig {
  int fft_size = 64;
  int data_subcarriers = 48;
  int cp_len = 16;
  int symbols_per_slot = 16;  // N
  Modulation modulation = Modulation::Qpsk;

  int symbol_len() const { return fft_size + cp_len; }
  void validate() const;  // throws std::invalid_argument
};

// In-place radix-2 FFT (size must be a power of two). Forward is the plain
// DFT sum; inverse includes the 1/n factor.
void fft_radix2(std::span<cplx> x, bool inverse);

// FFT-bin index for each data subcarrier. With the 64/48 numerology this is
// the 802.11-style allocation: bins +-1..26 minus the four reserved tone
// positions +-7 and +-21. Otherwise data bins are packed symmetrically
// around (and excluding) DC.
std::vector<int> data_bin_map(const OfdmConfig& cfg);

// One OFDM symbol: unitary IDFT of the mapped data grid plus cyclic prefix.
// freq_symbols has one entry per data subcarrier.
cvec ofdm_modulate(const OfdmConfig& cfg, std::span<const cplx> freq_symbols);

// Inverse of ofdm_modulate: strips the CP, unitary DFT, picks data bins.
cvec ofdm_demodulate(const OfdmConfig& cfg, std::span<const cplx> time_samples);

}  // namespace bia
