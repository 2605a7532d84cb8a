// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "bia/chanest.hpp"

using namespace bia;

namespace {

// Builds observations y = h * p (+ noise) for every (state, tx) sounding.
PilotObservations observe(const PilotPlan& plan, const ChannelSet& ch, int user,
                          double noise_var, Rng& rng) {
  PilotObservations obs(plan.num_states(), plan.num_tx(), plan.reps(), plan.num_subcarriers());
  cvec block(static_cast<std::size_t>(plan.reps()) * plan.num_subcarriers());
  for (int s = 0; s < plan.num_states(); ++s)
    for (int j = 0; j < plan.num_tx(); ++j) {
      for (int r = 0; r < plan.reps(); ++r)
        for (int f = 0; f < plan.num_subcarriers(); ++f) {
          cplx y = ch.at(user, s, j, f) * plan.symbol(j, r, f);
          if (noise_var > 0.0) y += std::sqrt(noise_var) * rng.cgauss();
          block[static_cast<std::size_t>(r) * plan.num_subcarriers() + f] = y;
        }
      obs.set_block(s, j, block);
    }
  return obs;
}

ChannelSet random_channels(int F, uint64_t seed) {
  ChannelModelConfig cfg;
  cfg.num_subcarriers = F;
  Rng rng(seed);
  return draw_channels(cfg, rng);
}

}  // namespace

TEST_CASE("noiseless estimates are exact") {
  const int F = 16;
  const ChannelSet ch = random_channels(F, 1);
  const PilotPlan plan(2, 2, 2, F);
  Rng rng(2);
  const PilotObservations obs = observe(plan, ch, 0, 0.0, rng);
  const cvec h = estimate_channels(plan, obs);
  for (int s = 0; s < 2; ++s)
    for (int j = 0; j < 2; ++j)
      for (int f = 0; f < F; ++f)
        CHECK(std::abs(h[(static_cast<std::size_t>(s) * 2 + j) * F + f] - ch.at(0, s, j, f)) <
              1e-10);
}

TEST_CASE("estimation MSE tracks noise over pilot energy") {
  const int F = 8;
  const double noise_var = 0.01;
  const PilotPlan plan(2, 2, 2, F);  // energy per coefficient = 2
  Rng rng(7);
  double err = 0.0;
  long count = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    const ChannelSet ch = random_channels(F, derive_seed(99, {static_cast<uint64_t>(trial)}));
    const PilotObservations obs = observe(plan, ch, 0, noise_var, rng);
    const cvec h = estimate_channels(plan, obs);
    for (int s = 0; s < 2; ++s)
      for (int j = 0; j < 2; ++j)
        for (int f = 0; f < F; ++f) {
          err += std::norm(h[(static_cast<std::size_t>(s) * 2 + j) * F + f] - ch.at(0, s, j, f));
          ++count;
        }
  }
  const double mse = err / count;
  const double expected = noise_var / plan.energy_per_coefficient();
  CHECK(mse == doctest::Approx(expected).epsilon(0.20));
}

TEST_CASE("quadrupled pilot energy cuts the MSE about 4x") {
  const int F = 8;
  const double noise_var = 0.04;
  auto run = [&](int reps, uint64_t seed) {
    const PilotPlan plan(2, 2, reps, F);
    Rng rng(seed);
    double err = 0.0;
    long count = 0;
    for (int trial = 0; trial < 4000; ++trial) {
      const ChannelSet ch = random_channels(F, derive_seed(5, {static_cast<uint64_t>(trial)}));
      const PilotObservations obs = observe(plan, ch, 0, noise_var, rng);
      const cvec h = estimate_channels(plan, obs);
      for (int s = 0; s < 2; ++s)
        for (int j = 0; j < 2; ++j)
          for (int f = 0; f < F; ++f) {
            err += std::norm(h[(static_cast<std::size_t>(s) * 2 + j) * F + f] - ch.at(0, s, j, f));
            ++count;
          }
    }
    return err / count;
  };
  const double mse1 = run(1, 11);
  const double mse4 = run(4, 12);
  const double ratio = mse1 / mse4;
  CHECK(ratio >= 3.0);
  CHECK(ratio <= 5.0);
}

TEST_CASE("missing pilot coverage is an error") {
  const int F = 4;
  const PilotPlan plan(2, 2, 1, F);
  PilotObservations obs(2, 2, 1, F);
  const cvec block(F, cplx(1.0, 0.0));
  obs.set_block(0, 0, block);
  obs.set_block(0, 1, block);
  obs.set_block(1, 0, block);
  // (tx 2, state 2) never observed
  CHECK_THROWS_AS(estimate_channels(plan, obs), std::invalid_argument);
  CHECK_THROWS_AS(obs.set_block(2, 0, block), std::out_of_range);
}

TEST_CASE("fill_user_estimates writes the right slots") {
  ChannelSet est(2, 2, 2, 3);
  cvec h(2 * 2 * 3);
  for (std::size_t i = 0; i < h.size(); ++i) h[i] = cplx(static_cast<double>(i), -1.0);
  fill_user_estimates(est, 1, h);
  CHECK(est.at(1, 0, 0, 0) == h[0]);
  CHECK(est.at(1, 1, 1, 2) == h[(2 + 1) * 3 + 2]);
  CHECK(est.at(0, 0, 0, 0) == cplx(0.0, 0.0));
  cvec wrong(5);
  CHECK_THROWS_AS(fill_user_estimates(est, 0, wrong), std::invalid_argument);
}
