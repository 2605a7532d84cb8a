// SPDX-License-Identifier: Apache-2.0
#include "bia/frame.hpp"

#include <stdexcept>

namespace bia {

FrameLayout FrameLayout::make(const OfdmConfig& cfg, int num_states, int num_tx, int pilot_reps) {
  cfg.validate();
  if (num_states < 1 || num_tx < 1 || pilot_reps < 1)
    throw std::invalid_argument("FrameLayout: pilot dimensions must be >= 1");
  FrameLayout l;
  l.preamble_len = kPreambleLen;
  l.symbol_len = cfg.symbol_len();
  l.num_states = num_states;
  l.num_tx = num_tx;
  l.pilot_reps = pilot_reps;
  l.payload_symbols = 3 * cfg.symbols_per_slot;
  return l;
}

int FrameLayout::pilot_symbol_start(int state, int tx, int rep) const {
  if (state < 0 || state >= num_states || tx < 0 || tx >= num_tx || rep < 0 || rep >= pilot_reps)
    throw std::out_of_range("FrameLayout::pilot_symbol_start: index out of range");
  const int sym = (state * num_tx + tx) * pilot_reps + rep;
  return pilot_start() + sym * symbol_len;
}

int FrameLayout::slot_start(int slot, int symbols_per_slot) const {
  if (slot < 0 || slot > 2) throw std::out_of_range("FrameLayout::slot_start: slot in {0,1,2}");
  return payload_start() + slot * symbols_per_slot * symbol_len;
}

Frame assemble_frame(const OfdmConfig& cfg, const PilotPlan& plan,
                     const std::vector<cvec>& payload_grids) {
  cfg.validate();
  const int F = cfg.data_subcarriers;
  const int n_payload = 3 * cfg.symbols_per_slot;
  if (static_cast<int>(payload_grids.size()) != plan.num_tx())
    throw std::invalid_argument("assemble_frame: one payload grid per tx antenna expected");
  for (const cvec& g : payload_grids)
    if (g.size() != static_cast<std::size_t>(n_payload) * F)
      throw std::invalid_argument("assemble_frame: payload grid must hold 3N x F symbols");
  if (plan.num_subcarriers() != F)
    throw std::invalid_argument("assemble_frame: pilot plan subcarrier count mismatch");

  Frame frame;
  frame.cfg = cfg;
  frame.layout = FrameLayout::make(cfg, plan.num_states(), plan.num_tx(), plan.reps());
  frame.tx_samples.assign(plan.num_tx(), cvec(frame.layout.total_samples(), cplx(0.0, 0.0)));

  // Preamble from antenna 0 only; other antennas stay silent.
  const cvec preamble = build_preamble();
  std::copy(preamble.begin(), preamble.end(), frame.tx_samples[0].begin());

  // Pilot section: antenna j sounds alone, repeated for every receiver state.
  cvec grid(F);
  for (int s = 0; s < plan.num_states(); ++s)
    for (int j = 0; j < plan.num_tx(); ++j)
      for (int r = 0; r < plan.reps(); ++r) {
        for (int f = 0; f < F; ++f) grid[f] = plan.symbol(j, r, f);
        const cvec sym = ofdm_modulate(cfg, grid);
        const int start = frame.layout.pilot_symbol_start(s, j, r);
        std::copy(sym.begin(), sym.end(), frame.tx_samples[j].begin() + start);
      }

  // Payload.
  for (int j = 0; j < plan.num_tx(); ++j)
    for (int t = 0; t < n_payload; ++t) {
      const cplx* src = &payload_grids[j][static_cast<std::size_t>(t) * F];
      const cvec sym = ofdm_modulate(cfg, std::span<const cplx>(src, F));
      const int start = frame.layout.payload_symbol_start(t);
      std::copy(sym.begin(), sym.end(), frame.tx_samples[j].begin() + start);
    }
  return frame;
}

cvec simulate_received_stream(const OfdmConfig& cfg, const PilotPlan& plan,
                              const std::vector<cvec>& payload_grids, const ChannelSet& ch,
                              int user, const SupersymbolSchedule& schedule, cplx omni_gain,
                              const NoiseConfig& noise, Rng& rng, int lead_silence) {
  cfg.validate();
  noise.validate();
  if (lead_silence < 0) throw std::invalid_argument("simulate_received_stream: lead_silence >= 0");
  const int F = cfg.data_subcarriers;
  const int N = cfg.symbols_per_slot;
  const FrameLayout layout = FrameLayout::make(cfg, plan.num_states(), plan.num_tx(), plan.reps());
  cvec out(static_cast<std::size_t>(lead_silence) + layout.total_samples(), cplx(0.0, 0.0));

  // Preamble through the scalar idle-state gain (antenna 0 transmits it).
  const cvec preamble = build_preamble();
  for (int i = 0; i < layout.preamble_len; ++i) out[lead_silence + i] = omni_gain * preamble[i];

  // One received OFDM symbol: per-bin channel applied in the frequency
  // domain, then re-synthesized with its cyclic prefix.
  cvec rx_grid(F);
  auto place_symbol = [&](int start, int state, auto&& tx_value) {
    for (int f = 0; f < F; ++f) {
      cplx acc(0.0, 0.0);
      for (int j = 0; j < plan.num_tx(); ++j) acc += ch.at(user, state, j, f) * tx_value(j, f);
      rx_grid[f] = acc;
    }
    const cvec sym = ofdm_modulate(cfg, rx_grid);
    for (int i = 0; i < layout.symbol_len; ++i) out[lead_silence + start + i] += sym[i];
  };

  for (int s = 0; s < plan.num_states(); ++s)
    for (int j = 0; j < plan.num_tx(); ++j)
      for (int r = 0; r < plan.reps(); ++r)
        place_symbol(layout.pilot_symbol_start(s, j, r), s, [&](int ant, int f) {
          return ant == j ? plan.symbol(j, r, f) : cplx(0.0, 0.0);
        });

  for (int t = 0; t < 3 * N; ++t) {
    const int slot = t / N;
    const int state = schedule.state_for(user, slot);
    place_symbol(layout.payload_symbol_start(t), state, [&](int ant, int f) {
      return payload_grids[ant][static_cast<std::size_t>(t) * F + f];
    });
  }

  if (noise.variance > 0.0) {
    const double s = std::sqrt(noise.variance);
    for (cplx& v : out) v += s * rng.cgauss();
  }
  return out;
}

}  // namespace bia
