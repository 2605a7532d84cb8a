// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "bia/chanest.hpp"
#include "bia/channel.hpp"
#include "bia/ofdm.hpp"
#include "bia/rng.hpp"
#include "bia/supersymbol.hpp"
#include "bia/sync.hpp"
#include "bia/types.hpp"

namespace bia {

// Sample-level frame geometry. Every section boundary is a fixed offset
// from the preamble start, which is how receivers time their antenna
// switching after detection.
struct FrameLayout {
  int preamble_len = kPreambleLen;
  int symbol_len = 80;     // fft + cp
  int num_states = 2;      // pilot section: state-major, then tx, then rep
  int num_tx = 2;
  int pilot_reps = 1;
  int payload_symbols = 48;  // 3 * N

  static FrameLayout make(const OfdmConfig& cfg, int num_states, int num_tx, int pilot_reps);

  int pilot_symbol_count() const { return num_states * num_tx * pilot_reps; }
  int pilot_start() const { return preamble_len; }
  int pilot_symbol_start(int state, int tx, int rep) const;
  int payload_start() const { return preamble_len + pilot_symbol_count() * symbol_len; }
  int payload_symbol_start(int t) const { return payload_start() + t * symbol_len; }
  // First sample of payload slot `slot` given N symbols per slot.
  int slot_start(int slot, int symbols_per_slot) const;
  int total_samples() const { return payload_start() + payload_symbols * symbol_len; }
};

// Per-transmit-antenna baseband sample streams: preamble (antenna 0 only),
// pilot sounding section, then 3N payload OFDM symbols.
struct Frame {
  OfdmConfig cfg;
  FrameLayout layout;
  std::vector<cvec> tx_samples;  // [num_tx][total_samples]
};

// payload_grids[antenna][t * data_subcarriers + f], t in [0, 3N).
Frame assemble_frame(const OfdmConfig& cfg, const PilotPlan& plan,
                     const std::vector<cvec>& payload_grids);

// Synthesizes what one receiver hears under per-subcarrier flat fading:
// OFDM sections get the per-bin gains of the state the receiver is in at
// that moment (pilot blocks use their own state, payload slots follow the
// schedule); the preamble rides a single scalar gain in the idle/omni
// state. `lead_silence` noise-only samples precede the frame.
cvec simulate_received_stream(const OfdmConfig& cfg, const PilotPlan& plan,
                              const std::vector<cvec>& payload_grids, const ChannelSet& ch,
                              int user, const SupersymbolSchedule& schedule, cplx omni_gain,
                              const NoiseConfig& noise, Rng& rng, int lead_silence);

}  // namespace bia
