// SPDX-License-Identifier: Apache-2.0
#include "bia/ofdm.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace bia {

void OfdmConfig::validate() const {
  if (fft_size < 2 || (fft_size & (fft_size - 1)) != 0)
    throw std::invalid_argument("ofdm config: fft_size must be a power of two >= 2");
  if (data_subcarriers < 1 || data_subcarriers > fft_size - 1)
    throw std::invalid_argument("ofdm config: data_subcarriers must be in [1, fft_size-1]");
  if (data_subcarriers % 2 != 0)
    throw std::invalid_argument("ofdm config: data_subcarriers must be even");
  if (cp_len < 0 || cp_len > fft_size)
    throw std::invalid_argument("ofdm config: cp_len must be in [0, fft_size]");
  if (symbols_per_slot < 1) throw std::invalid_argument("ofdm config: symbols_per_slot must be >= 1");
}

namespace {

const cvec& twiddles(int n) {
  thread_local std::unordered_map<int, cvec> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  cvec tw(static_cast<std::size_t>(n) / 2);
  for (int k = 0; k < n / 2; ++k) {
    const double a = -2.0 * kPi * k / n;
    tw[k] = cplx(std::cos(a), std::sin(a));
  }
  return cache.emplace(n, std::move(tw)).first->second;
}

}  // namespace

void fft_radix2(std::span<cplx> x, bool inverse) {
  const int n = static_cast<int>(x.size());
  if (n == 0 || (n & (n - 1)) != 0)
    throw std::invalid_argument("fft_radix2: size must be a power of two");
  // bit-reversal permutation
  for (int i = 1, j = 0; i < n; ++i) {
    int bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(x[i], x[j]);
  }
  const cvec& tw = twiddles(n);
  for (int len = 2; len <= n; len <<= 1) {
    const int half = len >> 1;
    const int stride = n / len;
    for (int i = 0; i < n; i += len) {
      for (int k = 0; k < half; ++k) {
        cplx w = tw[static_cast<std::size_t>(k) * stride];
        if (inverse) w = std::conj(w);
        const cplx u = x[i + k];
        const cplx v = x[i + k + half] * w;
        x[i + k] = u + v;
        x[i + k + half] = u - v;
      }
    }
  }
  if (inverse) {
    const double inv = 1.0 / n;
    for (cplx& v : x) v *= inv;
  }
}

std::vector<int> data_bin_map(const OfdmConfig& cfg) {
  cfg.validate();
  std::vector<int> bins;
  bins.reserve(cfg.data_subcarriers);
  if (cfg.fft_size == 64 && cfg.data_subcarriers == 48) {
    // +1..+26 then -26..-1, skipping the reserved tones at +-7, +-21.
    for (int k = 1; k <= 26; ++k)
      if (k != 7 && k != 21) bins.push_back(k);
    for (int k = -26; k <= -1; ++k)
      if (k != -7 && k != -21) bins.push_back(k + cfg.fft_size);
    return bins;
  }
  const int half = cfg.data_subcarriers / 2;
  if (half > cfg.fft_size / 2 - 1)
    throw std::invalid_argument("data_bin_map: too many data subcarriers for fft_size");
  for (int k = 1; k <= half; ++k) bins.push_back(k);
  for (int k = -half; k <= -1; ++k) bins.push_back(k + cfg.fft_size);
  return bins;
}

cvec ofdm_modulate(const OfdmConfig& cfg, std::span<const cplx> freq_symbols) {
  cfg.validate();
  if (static_cast<int>(freq_symbols.size()) != cfg.data_subcarriers)
    throw std::invalid_argument("ofdm_modulate: one symbol per data subcarrier expected");
  const std::vector<int> bins = data_bin_map(cfg);
  cvec grid(cfg.fft_size, cplx(0.0, 0.0));
  for (std::size_t i = 0; i < bins.size(); ++i) grid[bins[i]] = freq_symbols[i];
  fft_radix2(grid, /*inverse=*/true);
  const double scale = std::sqrt(static_cast<double>(cfg.fft_size));  // unitary IDFT
  for (cplx& v : grid) v *= scale;
  cvec out(static_cast<std::size_t>(cfg.symbol_len()));
  for (int i = 0; i < cfg.cp_len; ++i) out[i] = grid[cfg.fft_size - cfg.cp_len + i];
  for (int i = 0; i < cfg.fft_size; ++i) out[cfg.cp_len + i] = grid[i];
  return out;
}

cvec ofdm_demodulate(const OfdmConfig& cfg, std::span<const cplx> time_samples) {
  cfg.validate();
  if (static_cast<int>(time_samples.size()) != cfg.symbol_len())
    throw std::invalid_argument("ofdm_demodulate: wrong sample count");
  cvec body(time_samples.begin() + cfg.cp_len, time_samples.end());
  fft_radix2(body, /*inverse=*/false);
  const double scale = 1.0 / std::sqrt(static_cast<double>(cfg.fft_size));
  const std::vector<int> bins = data_bin_map(cfg);
  cvec out(bins.size());
  for (std::size_t i = 0; i < bins.size(); ++i) out[i] = body[bins[i]] * scale;
  return out;
}

}  // namespace bia
