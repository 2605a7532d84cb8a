// SPDX-License-Identifier: Apache-2.0
#include "bia/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace bia {

double aevms(std::span<const cplx> received, std::span<const cplx> ideal) {
  if (received.empty()) throw std::invalid_argument("aevms: empty input");
  if (received.size() != ideal.size()) throw std::invalid_argument("aevms: length mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < received.size(); ++i) acc += std::norm(received[i] - ideal[i]);
  return acc / static_cast<double>(received.size());
}

double pp_sinr_linear(double aevms_value) {
  if (aevms_value < 0.0) throw std::invalid_argument("pp_sinr: aevms must be >= 0");
  if (aevms_value == 0.0) return std::numeric_limits<double>::infinity();
  return 1.0 / aevms_value;
}

double pp_sinr_db(double aevms_value) {
  const double lin = pp_sinr_linear(aevms_value);
  if (std::isinf(lin)) return lin;
  return 10.0 * std::log10(lin);
}

double ber(std::span<const uint8_t> tx_bits, std::span<const uint8_t> rx_bits) {
  if (tx_bits.size() != rx_bits.size()) throw std::invalid_argument("ber: length mismatch");
  if (tx_bits.empty()) throw std::invalid_argument("ber: empty input");
  std::size_t err = 0;
  for (std::size_t i = 0; i < tx_bits.size(); ++i) err += (tx_bits[i] != 0) != (rx_bits[i] != 0);
  return static_cast<double>(err) / static_cast<double>(tx_bits.size());
}

namespace {

// log(det(G)) for Hermitian positive-definite G via in-place Cholesky.
double logdet_hpd(std::vector<cplx>& g, int n) {
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      cplx s = g[static_cast<std::size_t>(i) * n + j];
      for (int k = 0; k < j; ++k)
        s -= g[static_cast<std::size_t>(i) * n + k] *
             std::conj(g[static_cast<std::size_t>(j) * n + k]);
      if (i == j) {
        const double d = s.real();
        if (!(d > 0.0)) throw std::runtime_error("logdet: matrix not positive definite");
        g[static_cast<std::size_t>(i) * n + j] = std::sqrt(d);
        acc += std::log(d);
      } else {
        g[static_cast<std::size_t>(i) * n + j] = s / g[static_cast<std::size_t>(j) * n + j].real();
      }
    }
  }
  return acc;
}

}  // namespace

double rate_bia(const ChannelSet& ch, double total_power, int num_users, int num_tx) {
  if (!(total_power >= 0.0)) throw std::invalid_argument("rate_bia: total_power must be >= 0");
  const int K = num_users;
  const int M = num_tx;
  if (K < 1 || M < 1) throw std::invalid_argument("rate_bia: K and M must be >= 1");
  if (ch.num_users() < K) throw std::invalid_argument("rate_bia: channel set lacks users");
  if (ch.num_tx() != M) throw std::invalid_argument("rate_bia: channel set tx antenna mismatch");
  if (ch.num_states() < M)
    throw std::invalid_argument("rate_bia: channel set lacks states 1..M");
  if (total_power == 0.0) return 0.0;

  const double c = static_cast<double>(K + M - 1) * total_power / (static_cast<double>(M) * M * K);
  const double row_scale = 1.0 / std::sqrt(static_cast<double>(K));
  const int F = ch.num_subcarriers();

  std::vector<cplx> H(static_cast<std::size_t>(M) * M);
  std::vector<cplx> G(static_cast<std::size_t>(M) * M);
  double rate = 0.0;
  for (int k = 0; k < K; ++k) {
    double acc = 0.0;
    for (int f = 0; f < F; ++f) {
      for (int m = 0; m < M; ++m) {
        const double s = m < M - 1 ? row_scale : 1.0;
        for (int j = 0; j < M; ++j) H[static_cast<std::size_t>(m) * M + j] = s * ch.at(k, m, j, f);
      }
      // G = I + c * H H^H
      for (int i = 0; i < M; ++i)
        for (int j = 0; j < M; ++j) {
          cplx s(0.0, 0.0);
          for (int l = 0; l < M; ++l)
            s += H[static_cast<std::size_t>(i) * M + l] *
                 std::conj(H[static_cast<std::size_t>(j) * M + l]);
          G[static_cast<std::size_t>(i) * M + j] = c * s + (i == j ? 1.0 : 0.0);
        }
      acc += logdet_hpd(G, M);
    }
    rate += acc / (F * std::log(2.0) * static_cast<double>(M + K - 1));
  }
  return rate;
}

double rate_tdma(const ChannelSet& ch, double total_power, int num_users) {
  if (!(total_power >= 0.0)) throw std::invalid_argument("rate_tdma: total_power must be >= 0");
  const int K = num_users;
  if (K < 1) throw std::invalid_argument("rate_tdma: K must be >= 1");
  if (ch.num_users() < K) throw std::invalid_argument("rate_tdma: channel set lacks users");
  const int F = ch.num_subcarriers();
  double rate = 0.0;
  for (int k = 0; k < K; ++k) {
    double acc = 0.0;
    for (int f = 0; f < F; ++f) acc += std::log2(1.0 + total_power * std::norm(ch.at(k, 0, 0, f)));
    rate += acc / F;
  }
  return rate / K;
}

double residual_interference_ratio(double post_power, double pre_power) {
  if (!(pre_power > 0.0))
    throw std::invalid_argument("residual_interference_ratio: pre-cancellation power must be > 0");
  if (post_power < 0.0)
    throw std::invalid_argument("residual_interference_ratio: post-cancellation power must be >= 0");
  return post_power / pre_power;
}

std::vector<std::pair<double, double>> empirical_cdf(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("empirical_cdf: empty input");
  std::sort(values.begin(), values.end());
  const double n = static_cast<double>(values.size());
  std::vector<std::pair<double, double>> out;
  out.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double frac = static_cast<double>(i + 1) / n;
    if (!out.empty() && out.back().first == values[i])
      out.back().second = frac;  // ties collapse to the rightmost fraction
    else
      out.emplace_back(values[i], frac);
  }
  return out;
}

double qpsk_ber_awgn(double snr_linear) {
  if (!(snr_linear >= 0.0)) throw std::invalid_argument("qpsk_ber_awgn: snr must be >= 0");
  return 0.5 * std::erfc(std::sqrt(snr_linear / 2.0));
}

}  // namespace bia
