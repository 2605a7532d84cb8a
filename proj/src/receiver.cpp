// SPDX-License-Identifier: Apache-2.0
#include "bia/receiver.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "bia/metrics.hpp"

namespace bia {

cplx& SupersymbolObservation::at(int slot, int f, int n) {
  return slots[slot][static_cast<std::size_t>(f) * symbols_per_slot + n];
}

cplx SupersymbolObservation::at(int slot, int f, int n) const {
  return slots[slot][static_cast<std::size_t>(f) * symbols_per_slot + n];
}

SupersymbolObservation SupersymbolObservation::make(int num_subcarriers, int symbols_per_slot) {
  if (num_subcarriers < 1 || symbols_per_slot < 1)
    throw std::invalid_argument("SupersymbolObservation: dimensions must be >= 1");
  SupersymbolObservation o;
  o.num_subcarriers = num_subcarriers;
  o.symbols_per_slot = symbols_per_slot;
  for (cvec& s : o.slots)
    s.assign(static_cast<std::size_t>(num_subcarriers) * symbols_per_slot, cplx(0.0, 0.0));
  return o;
}

std::array<cplx, 2> cancel_pair(cplx y0, cplx y1, cplx y2, int user) {
  if (user == 0) return {y0 - y2, y1};
  if (user == 1) return {y0 - y1, y2};
  throw std::out_of_range("cancel_pair: user in {0,1}");
}

std::array<cvec, 2> cancel_interference(const SupersymbolObservation& obs, int user) {
  const std::size_t n = obs.slots[0].size();
  if (obs.slots[1].size() != n || obs.slots[2].size() != n)
    throw std::invalid_argument("cancel_interference: incomplete observation");
  std::array<cvec, 2> out{cvec(n), cvec(n)};
  for (std::size_t i = 0; i < n; ++i) {
    const auto c = cancel_pair(obs.slots[0][i], obs.slots[1][i], obs.slots[2][i], user);
    out[0][i] = c[0];
    out[1][i] = c[1];
  }
  return out;
}

namespace {

// Singular values of a 2x2 complex matrix from the eigenvalues of H^H H.
void singular_values_2x2(const EffectiveChannel& H, double* s_max, double* s_min) {
  const double t = std::norm(H.row[0][0]) + std::norm(H.row[0][1]) + std::norm(H.row[1][0]) +
                   std::norm(H.row[1][1]);
  const cplx det = H.row[0][0] * H.row[1][1] - H.row[0][1] * H.row[1][0];
  const double d = std::norm(det);
  const double disc = std::sqrt(std::max(t * t - 4.0 * d, 0.0));
  const double l1 = 0.5 * (t + disc);
  const double l2 = 0.5 * (t - disc);
  *s_max = std::sqrt(std::max(l1, 0.0));
  *s_min = std::sqrt(std::max(l2, 0.0));
}

struct Inverse2x2 {
  bool ok = false;
  std::array<std::array<cplx, 2>, 2> inv{};
};

Inverse2x2 invert_checked(const EffectiveChannel& H, double cond_threshold) {
  Inverse2x2 r;
  double smax, smin;
  singular_values_2x2(H, &smax, &smin);
  if (!(smin > 0.0) || smax / smin > cond_threshold) return r;
  const cplx det = H.row[0][0] * H.row[1][1] - H.row[0][1] * H.row[1][0];
  r.ok = true;
  r.inv[0][0] = H.row[1][1] / det;
  r.inv[0][1] = -H.row[0][1] / det;
  r.inv[1][0] = -H.row[1][0] / det;
  r.inv[1][1] = H.row[0][0] / det;
  return r;
}

Vec2 apply2x2(const std::array<std::array<cplx, 2>, 2>& m, const Vec2& v) {
  return {m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]};
}

}  // namespace

double EffectiveChannel::condition_number() const {
  double smax, smin;
  singular_values_2x2(*this, &smax, &smin);
  if (smin <= 0.0) return std::numeric_limits<double>::infinity();
  return smax / smin;
}

EffectiveChannel build_effective_channel(const ChannelSet& est, int user,
                                         const SupersymbolSchedule& schedule, int subcarrier) {
  if (est.num_tx() != 2) throw std::invalid_argument("build_effective_channel: needs 2 tx antennas");
  EffectiveChannel H;
  const auto slots = schedule.alignment_slots(user);
  for (int r = 0; r < 2; ++r) {
    const int state = schedule.state_for(user, slots[r]);
    for (int j = 0; j < 2; ++j) H.row[r][j] = est.at(user, state, j, subcarrier);
  }
  return H;
}

std::optional<Vec2> zf_detect(const Vec2& y_eff, const EffectiveChannel& H, double cond_threshold) {
  for (const auto& row : H.row)
    for (const cplx& v : row)
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw std::invalid_argument("zf_detect: non-finite effective channel");
  const Inverse2x2 inv = invert_checked(H, cond_threshold);
  if (!inv.ok) return std::nullopt;
  return apply2x2(inv.inv, y_eff);
}

double LinkConfig::total_power() const { return std::pow(10.0, snr_db / 10.0); }

void LinkConfig::validate() const {
  if (!(noise_variance >= 0.0)) throw std::invalid_argument("link config: noise_variance >= 0");
  if (symbols_per_slot < 1) throw std::invalid_argument("link config: symbols_per_slot >= 1");
  if (num_subcarriers < 1) throw std::invalid_argument("link config: num_subcarriers >= 1");
  if (!(drift_deg_per_slot >= 0.0)) throw std::invalid_argument("link config: drift_deg >= 0");
  if (!(cond_threshold > 1.0)) throw std::invalid_argument("link config: cond_threshold > 1");
}

double LinkResult::pp_sinr_db(int user) const {
  const double a = aevms_user.at(user);
  if (a <= 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(1.0 / a);
}

double LinkResult::residual_ratio(int user) const {
  const double pre = residual_pre_user.at(user);
  if (pre <= 0.0) return 0.0;
  return residual_post_user[user] / pre;
}

double LinkResult::residual_ratio_adjacent() const { return residual_ratio(1); }

LinkResult run_bia_link(const ChannelSet& ch, const SupersymbolSchedule& schedule,
                        const LinkConfig& cfg, Rng& data_rng, Rng& noise_rng,
                        bool collect_streams) {
  cfg.validate();
  if (ch.num_users() < 2 || ch.num_states() < 2 || ch.num_tx() != 2)
    throw std::invalid_argument("run_bia_link: needs 2 users, 2 states, 2 tx antennas");
  if (ch.num_subcarriers() != cfg.num_subcarriers)
    throw std::invalid_argument("run_bia_link: channel/config subcarrier mismatch");

  const int F = cfg.num_subcarriers;
  const int N = cfg.symbols_per_slot;
  const int bps = bits_per_symbol(cfg.modulation);
  const double alpha = power_scale_for(cfg.total_power());
  const NoiseConfig noise{cfg.noise_variance};
  const double drift = cfg.packet_granularity ? cfg.drift_deg_per_slot : 0.0;

  // Payload slots drift relative to the (drift-free) channel-estimation
  // reference; within a symbol-level supersymbol the channel holds still.
  std::array<ChannelSet, 3> slot_ch{apply_slot_phase_drift(ch, 0, drift),
                                    apply_slot_phase_drift(ch, 1, drift),
                                    apply_slot_phase_drift(ch, 2, drift)};

  LinkResult res;
  std::vector<std::vector<double>> stream_err(4);   // [user*2+stream][f]
  std::vector<std::vector<long>> stream_bits(4), stream_errbits(4);
  if (collect_streams)
    for (int i = 0; i < 4; ++i) {
      stream_err[i].assign(F, 0.0);
      stream_bits[i].assign(F, 0);
      stream_errbits[i].assign(F, 0);
    }

  std::array<double, 2> err_sum{0.0, 0.0};
  std::array<long, 2> sym_count{0, 0};

  uint8_t bits[4];
  for (int f = 0; f < F; ++f) {
    // Per-subcarrier equalizers from the estimation-time channel.
    std::array<Inverse2x2, 2> eq;
    for (int k = 0; k < 2; ++k) {
      const EffectiveChannel H = build_effective_channel(ch, k, schedule, f);
      eq[k] = invert_checked(H, cfg.cond_threshold);
      if (!eq[k].ok) ++res.ill_conditioned_count;
    }

    for (int n = 0; n < N; ++n) {
      std::array<Vec2, 2> u;                      // u[user][stream]
      std::array<std::array<uint8_t, 8>, 2> txb;  // tx bits per user (bps*2 used)
      for (int k = 0; k < 2; ++k)
        for (int s = 0; s < 2; ++s) {
          for (int b = 0; b < bps; ++b) {
            bits[b] = static_cast<uint8_t>(data_rng.bit());
            txb[k][s * bps + b] = bits[b];
          }
          u[k][s] = map_symbol(cfg.modulation, std::span<const uint8_t>(bits, bps));
        }

      const std::array<Vec2, 3> x = precode(u[0], u[1], alpha);

      // Received samples; noise order fixed as (f, n, slot, user).
      std::array<std::array<cplx, 3>, 2> y;
      for (int t = 0; t < 3; ++t)
        for (int k = 0; k < 2; ++k) {
          const int state = schedule.state_for(k, t);
          y[k][t] = transmit_through(slot_ch[t], k, state, f, x[t], noise, noise_rng);
        }

      // Interference components tracked by superposition: x(2) carries
      // exactly the user-0 interference (a*u2) and x(1) the user-1
      // interference (a*u1), so the same transmit vector is reused here.
      {
        const cplx i0_a = slot_ch[0].dot(0, schedule.state_for(0, 0), f, x[2]);
        const cplx i0_b = slot_ch[2].dot(0, schedule.state_for(0, 2), f, x[2]);
        const cplx i1_a = slot_ch[0].dot(1, schedule.state_for(1, 0), f, x[1]);
        const cplx i1_b = slot_ch[1].dot(1, schedule.state_for(1, 1), f, x[1]);
        res.residual_pre_user[0] += 0.5 * (std::norm(i0_a) + std::norm(i0_b));
        res.residual_post_user[0] += std::norm(i0_a - i0_b);
        res.residual_pre_user[1] += 0.5 * (std::norm(i1_a) + std::norm(i1_b));
        res.residual_post_user[1] += std::norm(i1_a - i1_b);
      }

      for (int k = 0; k < 2; ++k) {
        if (!eq[k].ok) continue;  // reported via ill_conditioned_count
        const auto c = cancel_pair(y[k][0], y[k][1], y[k][2], k);
        Vec2 u_hat = apply2x2(eq[k].inv, Vec2{c[0], c[1]});
        u_hat[0] /= alpha;
        u_hat[1] /= alpha;
        for (int s = 0; s < 2; ++s) {
          const double e = std::norm(u_hat[s] - u[k][s]);
          err_sum[k] += e;
          ++sym_count[k];
          demap_symbol(u_hat[s], cfg.modulation, bits);
          long berr = 0;
          for (int b = 0; b < bps; ++b) berr += bits[b] != txb[k][s * bps + b];
          res.bits_user[k] += bps;
          res.bit_errors_user[k] += berr;
          if (collect_streams) {
            stream_err[k * 2 + s][f] += e;
            stream_bits[k * 2 + s][f] += bps;
            stream_errbits[k * 2 + s][f] += berr;
          }
        }
      }
    }
  }

  for (int k = 0; k < 2; ++k)
    res.aevms_user[k] = sym_count[k] > 0 ? err_sum[k] / sym_count[k] : 0.0;
  for (int k = 0; k < 2; ++k)
    res.ber_user[k] =
        res.bits_user[k] > 0 ? static_cast<double>(res.bit_errors_user[k]) / res.bits_user[k] : 0.0;

  if (collect_streams) {
    res.stream_records.reserve(static_cast<std::size_t>(4) * F);
    for (int k = 0; k < 2; ++k)
      for (int s = 0; s < 2; ++s)
        for (int f = 0; f < F; ++f) {
          const long nb = stream_bits[k * 2 + s][f];
          if (nb == 0) continue;
          StreamRecord r;
          r.user = k;
          r.stream = s;
          r.subcarrier = f;
          r.aevms = stream_err[k * 2 + s][f] / (static_cast<double>(nb) / bps);
          r.bits = nb;
          r.bit_errors = stream_errbits[k * 2 + s][f];
          res.stream_records.push_back(r);
        }
  }
  return res;
}

LinkResult run_tdma_link(const ChannelSet& ch, const LinkConfig& cfg, Rng& data_rng,
                         Rng& noise_rng, bool collect_streams) {
  cfg.validate();
  if (ch.num_users() < 2 || ch.num_tx() < 1)
    throw std::invalid_argument("run_tdma_link: needs 2 users");
  if (ch.num_subcarriers() != cfg.num_subcarriers)
    throw std::invalid_argument("run_tdma_link: channel/config subcarrier mismatch");

  const int F = cfg.num_subcarriers;
  const int N = cfg.symbols_per_slot;
  const int bps = bits_per_symbol(cfg.modulation);
  const double amp = std::sqrt(cfg.total_power());
  const NoiseConfig noise{cfg.noise_variance};
  const double drift = cfg.packet_granularity ? cfg.drift_deg_per_slot : 0.0;

  // One slot per user, same slot duration as the supersymbol slots.
  std::array<ChannelSet, 2> slot_ch{apply_slot_phase_drift(ch, 0, drift),
                                    apply_slot_phase_drift(ch, 1, drift)};

  LinkResult res;
  std::vector<std::vector<double>> stream_err(2);
  std::vector<std::vector<long>> stream_bits(2), stream_errbits(2);
  if (collect_streams)
    for (int i = 0; i < 2; ++i) {
      stream_err[i].assign(F, 0.0);
      stream_bits[i].assign(F, 0);
      stream_errbits[i].assign(F, 0);
    }

  std::array<double, 2> err_sum{0.0, 0.0};
  std::array<long, 2> sym_count{0, 0};
  const cvec zeros(static_cast<std::size_t>(ch.num_tx()) - 1, cplx(0.0, 0.0));

  uint8_t bits[4], rxb[4];
  cvec x(ch.num_tx(), cplx(0.0, 0.0));
  for (int f = 0; f < F; ++f) {
    for (int n = 0; n < N; ++n) {
      for (int k = 0; k < 2; ++k) {
        const cplx h = ch.at(k, 0, 0, f);  // fixed state, single tx antenna
        for (int b = 0; b < bps; ++b) bits[b] = static_cast<uint8_t>(data_rng.bit());
        const cplx u = map_symbol(cfg.modulation, std::span<const uint8_t>(bits, bps));
        x[0] = amp * u;
        const cplx y = transmit_through(slot_ch[k], k, 0, f, x, noise, noise_rng);
        if (std::norm(h) == 0.0) {
          ++res.ill_conditioned_count;
          continue;
        }
        const cplx u_hat = y / (amp * h);
        const double e = std::norm(u_hat - u);
        err_sum[k] += e;
        ++sym_count[k];
        demap_symbol(u_hat, cfg.modulation, rxb);
        long berr = 0;
        for (int b = 0; b < bps; ++b) berr += rxb[b] != bits[b];
        res.bits_user[k] += bps;
        res.bit_errors_user[k] += berr;
        if (collect_streams) {
          stream_err[k][f] += e;
          stream_bits[k][f] += bps;
          stream_errbits[k][f] += berr;
        }
      }
    }
  }

  for (int k = 0; k < 2; ++k)
    res.aevms_user[k] = sym_count[k] > 0 ? err_sum[k] / sym_count[k] : 0.0;
  for (int k = 0; k < 2; ++k)
    res.ber_user[k] =
        res.bits_user[k] > 0 ? static_cast<double>(res.bit_errors_user[k]) / res.bits_user[k] : 0.0;

  if (collect_streams) {
    res.stream_records.reserve(static_cast<std::size_t>(2) * F);
    for (int k = 0; k < 2; ++k)
      for (int f = 0; f < F; ++f) {
        const long nb = stream_bits[k][f];
        if (nb == 0) continue;
        StreamRecord r;
        r.user = k;
        r.stream = 0;
        r.subcarrier = f;
        r.aevms = stream_err[k][f] / (static_cast<double>(nb) / bps);
        r.bits = nb;
        r.bit_errors = stream_errbits[k][f];
        res.stream_records.push_back(r);
      }
  }
  return res;
}

}  // namespace bia
