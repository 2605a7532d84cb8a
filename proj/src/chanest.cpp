// SPDX-License-Identifier: Apache-2.0
#include "bia/chanest.hpp"

#include <cmath>
#include <stdexcept>

#include "bia/rng.hpp"

namespace bia {

PilotPlan::PilotPlan(int num_states, int num_tx, int reps, int num_subcarriers, double amplitude,
                     uint64_t seed)
    : states_(num_states), tx_(num_tx), reps_(reps), sc_(num_subcarriers), amp_(amplitude) {
  if (states_ < 1 || tx_ < 1 || reps_ < 1 || sc_ < 1)
    throw std::invalid_argument("PilotPlan: all dimensions must be >= 1");
  if (!(amp_ > 0.0)) throw std::invalid_argument("PilotPlan: amplitude must be > 0");
  Rng rng(seed);
  symbols_.resize(static_cast<std::size_t>(tx_) * reps_ * sc_);
  for (cplx& v : symbols_) {
    const double ph = 2.0 * kPi * rng.uniform();
    v = amp_ * cplx(std::cos(ph), std::sin(ph));
  }
}

cplx PilotPlan::symbol(int tx, int rep, int f) const {
  if (tx < 0 || tx >= tx_ || rep < 0 || rep >= reps_ || f < 0 || f >= sc_)
    throw std::out_of_range("PilotPlan::symbol: index out of range");
  return symbols_[(static_cast<std::size_t>(tx) * reps_ + rep) * sc_ + f];
}

PilotObservations::PilotObservations(int num_states, int num_tx, int reps, int num_subcarriers)
    : states_(num_states), tx_(num_tx), reps_(reps), sc_(num_subcarriers) {
  if (states_ < 1 || tx_ < 1 || reps_ < 1 || sc_ < 1)
    throw std::invalid_argument("PilotObservations: all dimensions must be >= 1");
  y_.assign(static_cast<std::size_t>(states_) * tx_ * reps_ * sc_, cplx(0.0, 0.0));
  covered_.assign(static_cast<std::size_t>(states_) * tx_, false);
}

void PilotObservations::set_block(int state, int tx, std::span<const cplx> y) {
  if (state < 0 || state >= states_ || tx < 0 || tx >= tx_)
    throw std::out_of_range("PilotObservations::set_block: index out of range");
  if (y.size() != static_cast<std::size_t>(reps_) * sc_)
    throw std::invalid_argument("PilotObservations::set_block: expected reps * subcarriers samples");
  const std::size_t base = (static_cast<std::size_t>(state) * tx_ + tx) * reps_ * sc_;
  for (std::size_t i = 0; i < y.size(); ++i) y_[base + i] = y[i];
  covered_[static_cast<std::size_t>(state) * tx_ + tx] = true;
}

bool PilotObservations::covered(int state, int tx) const {
  return covered_[static_cast<std::size_t>(state) * tx_ + tx];
}

cplx PilotObservations::get(int state, int tx, int rep, int f) const {
  if (state < 0 || state >= states_ || tx < 0 || tx >= tx_ || rep < 0 || rep >= reps_ || f < 0 ||
      f >= sc_)
    throw std::out_of_range("PilotObservations::get: index out of range");
  return y_[((static_cast<std::size_t>(state) * tx_ + tx) * reps_ + rep) * sc_ + f];
}

cvec estimate_channels(const PilotPlan& plan, const PilotObservations& obs) {
  if (plan.num_states() != obs.num_states() || plan.num_tx() != obs.num_tx() ||
      plan.reps() != obs.reps() || plan.num_subcarriers() != obs.num_subcarriers())
    throw std::invalid_argument("estimate_channels: plan/observation shape mismatch");
  for (int s = 0; s < plan.num_states(); ++s)
    for (int j = 0; j < plan.num_tx(); ++j)
      if (!obs.covered(s, j))
        throw std::invalid_argument("estimate_channels: missing pilots for (tx " +
                                    std::to_string(j + 1) + ", state " + std::to_string(s + 1) +
                                    ")");
  const int F = plan.num_subcarriers();
  cvec h(static_cast<std::size_t>(plan.num_states()) * plan.num_tx() * F);
  for (int s = 0; s < plan.num_states(); ++s)
    for (int j = 0; j < plan.num_tx(); ++j)
      for (int f = 0; f < F; ++f) {
        cplx num(0.0, 0.0);
        double den = 0.0;
        for (int r = 0; r < plan.reps(); ++r) {
          const cplx p = plan.symbol(j, r, f);
          num += obs.get(s, j, r, f) * std::conj(p);
          den += std::norm(p);
        }
        h[(static_cast<std::size_t>(s) * plan.num_tx() + j) * F + f] = num / den;
      }
  return h;
}

void fill_user_estimates(ChannelSet& est, int user, std::span<const cplx> h_hat) {
  const int S = est.num_states();
  const int M = est.num_tx();
  const int F = est.num_subcarriers();
  if (h_hat.size() != static_cast<std::size_t>(S) * M * F)
    throw std::invalid_argument("fill_user_estimates: estimate vector shape mismatch");
  for (int s = 0; s < S; ++s)
    for (int j = 0; j < M; ++j)
      for (int f = 0; f < F; ++f)
        est.at(user, s, j, f) = h_hat[(static_cast<std::size_t>(s) * M + j) * F + f];
}

}  // namespace bia
