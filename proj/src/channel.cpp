// SPDX-License-Identifier: Apache-2.0
#include "bia/channel.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace bia {

void ChannelModelConfig::validate() const {
  if (num_users < 1) throw std::invalid_argument("channel config: num_users must be >= 1");
  if (num_tx < 1) throw std::invalid_argument("channel config: num_tx must be >= 1");
  if (num_states < 2) throw std::invalid_argument("channel config: num_states must be >= 2");
  if (num_subcarriers < 1) throw std::invalid_argument("channel config: num_subcarriers must be >= 1");
  if (!(inter_state_correlation >= 0.0 && inter_state_correlation <= 1.0))
    throw std::invalid_argument("channel config: inter_state_correlation must be in [0, 1]");
  if (!(phase_drift_per_slot_deg >= 0.0))
    throw std::invalid_argument("channel config: phase_drift_per_slot_deg must be >= 0");
}

void NoiseConfig::validate() const {
  if (!(variance >= 0.0)) throw std::invalid_argument("noise config: variance must be >= 0");
}

ChannelSet::ChannelSet(int num_users, int num_states, int num_tx, int num_subcarriers)
    : users_(num_users), states_(num_states), tx_(num_tx), sc_(num_subcarriers) {
  if (users_ < 1 || states_ < 1 || tx_ < 1 || sc_ < 1)
    throw std::invalid_argument("ChannelSet: all dimensions must be >= 1");
  a_.assign(static_cast<std::size_t>(users_) * states_ * tx_ * sc_, cplx(0.0, 0.0));
}

std::size_t ChannelSet::idx(int user, int state, int tx, int sc) const {
  if (user < 0 || user >= users_ || state < 0 || state >= states_ || tx < 0 || tx >= tx_ ||
      sc < 0 || sc >= sc_)
    throw std::out_of_range("ChannelSet: index out of range");
  return ((static_cast<std::size_t>(user) * states_ + state) * tx_ + tx) * sc_ + sc;
}

cplx ChannelSet::dot(int user, int state, int sc, std::span<const cplx> x) const {
  if (static_cast<int>(x.size()) != tx_)
    throw std::invalid_argument("ChannelSet::dot: x must have one entry per tx antenna");
  const std::size_t base = idx(user, state, 0, sc);
  cplx acc(0.0, 0.0);
  for (int j = 0; j < tx_; ++j) acc += a_[base + static_cast<std::size_t>(j) * sc_] * x[j];
  return acc;
}

bool ChannelSet::all_finite() const {
  for (const cplx& v : a_)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  return true;
}

ChannelSet draw_channels(const ChannelModelConfig& cfg, Rng& rng) {
  cfg.validate();
  ChannelSet ch(cfg.num_users, cfg.num_states, cfg.num_tx, cfg.num_subcarriers);
  const double rho = cfg.inter_state_correlation;
  const double a = std::sqrt(rho);
  const double b = std::sqrt(1.0 - rho);
  for (int k = 0; k < cfg.num_users; ++k)
    for (int j = 0; j < cfg.num_tx; ++j)
      for (int f = 0; f < cfg.num_subcarriers; ++f) {
        const cplx common = rng.cgauss();
        for (int s = 0; s < cfg.num_states; ++s) {
          const cplx w = rng.cgauss();
          ch.at(k, s, j, f) = a * common + b * w;
        }
      }
  return ch;
}

ChannelSet apply_slot_phase_drift(const ChannelSet& ch, int slot_index, double theta_deg) {
  if (slot_index < 0) throw std::invalid_argument("apply_slot_phase_drift: slot_index must be >= 0");
  ChannelSet out = ch;
  const double ang = static_cast<double>(slot_index) * deg_to_rad(theta_deg);
  if (ang == 0.0) return out;
  const cplx rot(std::cos(ang), std::sin(ang));
  for (cplx& v : out.raw()) v *= rot;
  return out;
}

cplx transmit_through(const ChannelSet& ch, int user, int state, int sc,
                      std::span<const cplx> x, const NoiseConfig& noise, Rng& rng) {
  noise.validate();
  cplx y = ch.dot(user, state, sc, x);
  if (noise.variance > 0.0) y += std::sqrt(noise.variance) * rng.cgauss();
  return y;
}

ChannelSet load_channel_table(std::istream& in) {
  struct Entry {
    int user, state, tx, sc;
    cplx v;
  };
  std::vector<Entry> rows;
  int max_user = 0, max_state = 0, max_tx = 0, max_sc = 0;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    int user, state, tx, sc;
    double re, im;
    if (!(ls >> user)) continue;  // blank line
    if (!(ls >> state >> tx >> sc >> re >> im))
      throw std::invalid_argument("channel table: malformed row at line " + std::to_string(lineno));
    if (user < 1 || state < 1 || tx < 1 || sc < 1)
      throw std::invalid_argument("channel table: indices are 1-based, line " + std::to_string(lineno));
    rows.push_back({user - 1, state - 1, tx - 1, sc - 1, cplx(re, im)});
    max_user = std::max(max_user, user);
    max_state = std::max(max_state, state);
    max_tx = std::max(max_tx, tx);
    max_sc = std::max(max_sc, sc);
  }
  if (rows.empty()) throw std::invalid_argument("channel table: no rows");
  ChannelSet ch(max_user, max_state, max_tx, max_sc);
  std::vector<bool> seen(static_cast<std::size_t>(max_user) * max_state * max_tx * max_sc, false);
  for (const Entry& e : rows) {
    ch.at(e.user, e.state, e.tx, e.sc) = e.v;
    seen[((static_cast<std::size_t>(e.user) * max_state + e.state) * max_tx + e.tx) * max_sc + e.sc] =
        true;
  }
  for (bool s : seen)
    if (!s) throw std::invalid_argument("channel table: incomplete coverage of index combinations");
  if (!ch.all_finite()) throw std::invalid_argument("channel table: non-finite coefficient");
  return ch;
}

ChannelSet load_channel_table(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("channel table: cannot open " + path);
  return load_channel_table(f);
}

}  // namespace bia
