// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "bia/metrics.hpp"
#include "bia/rng.hpp"

using namespace bia;

TEST_CASE("aevms basics") {
  const cvec a = {cplx(1, 0), cplx(0, 1), cplx(-1, 0)};
  CHECK(aevms(a, a) == 0.0);

  cvec shifted = a;
  const cplx d(0.03, -0.04);
  for (cplx& v : shifted) v += d;
  CHECK(aevms(shifted, a) == doctest::Approx(std::norm(d)).epsilon(1e-12));

  CHECK_THROWS_AS(aevms(cvec{}, cvec{}), std::invalid_argument);
  CHECK_THROWS_AS(aevms(a, cvec{cplx(0, 0)}), std::invalid_argument);
}

TEST_CASE("aevms calibrated against AWGN and permutation invariant") {
  Rng rng(3);
  const int n = 100000;
  cvec ideal(n), rx(n);
  const double var = 0.01;
  for (int i = 0; i < n; ++i) {
    ideal[i] = cplx(rng.bit() ? -0.7071 : 0.7071, rng.bit() ? -0.7071 : 0.7071);
    rx[i] = ideal[i] + std::sqrt(var) * rng.cgauss();
  }
  const double m = aevms(rx, ideal);
  CHECK(m == doctest::Approx(var).epsilon(0.05));

  // common permutation of (received, ideal) pairs leaves the value unchanged
  cvec rx_r(rx.rbegin(), rx.rend());
  cvec ideal_r(ideal.rbegin(), ideal.rend());
  CHECK(aevms(rx_r, ideal_r) == doctest::Approx(m).epsilon(1e-12));
}

TEST_CASE("pp_sinr reciprocal and sentinel") {
  CHECK(pp_sinr_linear(0.1) == doctest::Approx(10.0).epsilon(1e-12));
  CHECK(pp_sinr_db(0.1) == doctest::Approx(10.0).epsilon(1e-9));
  CHECK(pp_sinr_linear(1.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(pp_sinr_db(1.0) == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(std::isinf(pp_sinr_linear(0.0)));
  CHECK(std::isinf(pp_sinr_db(0.0)));
  CHECK_THROWS_AS(pp_sinr_linear(-1.0), std::invalid_argument);
}

TEST_CASE("ber basics and binomial scale") {
  const std::vector<uint8_t> a = {0, 1, 1, 0, 1};
  std::vector<uint8_t> b = a;
  CHECK(ber(a, b) == 0.0);
  for (auto& x : b) x ^= 1;
  CHECK(ber(a, b) == 1.0);
  CHECK_THROWS_AS(ber(a, std::vector<uint8_t>{0, 1}), std::invalid_argument);

  Rng rng(5);
  const int n = 1000000;
  std::vector<uint8_t> s(n), t(n);
  for (int i = 0; i < n; ++i) {
    s[i] = static_cast<uint8_t>(rng.bit());
    t[i] = static_cast<uint8_t>(rng.bit());
  }
  CHECK(std::abs(ber(s, t) - 0.5) < 0.002);
}

namespace {

ChannelSet axis_channels() {
  // h(1) = [1, 0], h(2) = [0, 1] for both users, one subcarrier.
  ChannelSet ch(2, 2, 2, 1);
  for (int k = 0; k < 2; ++k) {
    ch.at(k, 0, 0, 0) = cplx(1, 0);
    ch.at(k, 1, 1, 0) = cplx(1, 0);
  }
  return ch;
}

}  // namespace

TEST_CASE("rate_bia frozen example: axis channels at P = 1") {
  const ChannelSet ch = axis_channels();
  // Independent evaluation: H = [[1/sqrt(2), 0], [0, 1]] per user, so
  // det(I + (3/8) H H^H) = (1 + 3/16)(1 + 3/8) = 209/128 and
  // R = 2 * (1/3) * log2(209/128).
  const double expected = (2.0 / 3.0) * std::log2(209.0 / 128.0);
  CHECK(rate_bia(ch, 1.0, 2, 2) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(expected == doctest::Approx(0.471572754720588).epsilon(1e-12));  // frozen decimal
}

TEST_CASE("rate_bia: zero power, monotonicity, errors") {
  const ChannelSet ch = axis_channels();
  CHECK(rate_bia(ch, 0.0, 2, 2) == 0.0);
  double prev = 0.0;
  for (double p : {0.5, 1.0, 2.0, 8.0, 100.0}) {
    const double r = rate_bia(ch, p, 2, 2);
    CHECK(r > prev);
    prev = r;
  }
  ChannelSet one_state(2, 1, 2, 1);
  CHECK_THROWS_AS(rate_bia(one_state, 1.0, 2, 2), std::invalid_argument);
}

TEST_CASE("rate_bia degenerates to rate_tdma for K = M = 1") {
  ChannelModelConfig cfg;
  cfg.num_users = 1;
  cfg.num_tx = 1;
  cfg.num_states = 2;
  cfg.num_subcarriers = 64;
  Rng rng(9);
  const ChannelSet ch = draw_channels(cfg, rng);
  for (double p : {0.5, 4.0, 50.0}) {
    CHECK(rate_bia(ch, p, 1, 1) == doctest::Approx(rate_tdma(ch, p, 1)).epsilon(1e-12));
  }
}

TEST_CASE("rate_tdma: unit channels and slot-share scaling") {
  ChannelSet ch(2, 2, 2, 1);
  for (int k = 0; k < 2; ++k) ch.at(k, 0, 0, 0) = cplx(1, 0);
  CHECK(rate_tdma(ch, 0.0, 2) == 0.0);
  // |h| = 1, K = 2, P = 3: (1/2) * (log2(4) + log2(4)) = 2 bits/s/Hz
  CHECK(rate_tdma(ch, 3.0, 2) == doctest::Approx(2.0).epsilon(1e-12));

  // a user's contribution carries the 1/K slot share: with the second
  // user's channel zeroed, doubling K halves the sum rate
  ChannelSet solo(2, 2, 2, 1);
  solo.at(0, 0, 0, 0) = cplx(1, 0);
  CHECK(rate_tdma(solo, 3.0, 2) == doctest::Approx(0.5 * rate_tdma(solo, 3.0, 1)).epsilon(1e-12));
}

TEST_CASE("residual interference ratio") {
  CHECK(residual_interference_ratio(0.0, 1.0) == 0.0);
  CHECK(residual_interference_ratio(2.0, 0.5) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK_THROWS_AS(residual_interference_ratio(1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(residual_interference_ratio(-1.0, 1.0), std::invalid_argument);
  // closed form at 180 degrees: |1 - e^{j pi}|^2 = 4
  const double theta = kPi;
  CHECK(std::norm(1.0 - std::exp(cplx(0.0, theta))) == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("empirical cdf") {
  const auto single = empirical_cdf({5.0});
  REQUIRE(single.size() == 1);
  CHECK(single[0] == std::pair<double, double>(5.0, 1.0));

  const auto four = empirical_cdf({4.0, 2.0, 1.0, 3.0});
  REQUIRE(four.size() == 4);
  for (int i = 0; i < 4; ++i) {
    CHECK(four[i].first == doctest::Approx(1.0 + i));
    CHECK(four[i].second == doctest::Approx(0.25 * (i + 1)));
  }
  CHECK(four.back().second == 1.0);  // CDF at the max is 1

  const auto tied = empirical_cdf({2.0, 2.0, 1.0});
  REQUIRE(tied.size() == 2);
  CHECK(tied[1].first == 2.0);
  CHECK(tied[1].second == 1.0);

  CHECK_THROWS_AS(empirical_cdf({}), std::invalid_argument);
}

TEST_CASE("qpsk theory curve") {
  CHECK(qpsk_ber_awgn(0.0) == doctest::Approx(0.5).epsilon(1e-12));
  // Q(sqrt(10)) = 0.5 erfc(sqrt(5)) ~ 7.827e-4
  CHECK(qpsk_ber_awgn(10.0) == doctest::Approx(7.827e-4).epsilon(0.001));
  CHECK(qpsk_ber_awgn(100.0) < qpsk_ber_awgn(10.0));
}
