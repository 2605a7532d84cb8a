// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <fstream>

#include "bia/rng.hpp"
#include "bia/sync.hpp"

using namespace bia;

TEST_CASE("preamble: 256 unit-modulus samples") {
  const cvec p = build_preamble();
  REQUIRE(static_cast<int>(p.size()) == kPreambleLen);
  for (const cplx& v : p) CHECK(std::abs(v) == doctest::Approx(1.0).epsilon(1e-12));
  const cvec q = build_preamble();
  for (int i = 0; i < kPreambleLen; ++i) CHECK(p[i] == q[i]);
}

// Exhaustive aperiodic autocorrelation scan of the frozen sequence.
TEST_CASE("preamble autocorrelation: unit peak, sidelobes <= 0.25") {
  const cvec p = build_preamble();
  const int n = kPreambleLen;
  double peak = 0.0;
  double max_side = 0.0;
  for (int lag = -(n - 1); lag <= n - 1; ++lag) {
    cplx acc(0.0, 0.0);
    for (int i = 0; i < n; ++i) {
      const int j = i + lag;
      if (j < 0 || j >= n) continue;
      acc += p[j] * std::conj(p[i]);
    }
    const double mag = std::abs(acc) / n;
    if (lag == 0)
      peak = mag;
    else
      max_side = std::max(max_side, mag);
  }
  CHECK(peak == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(max_side <= 0.25);
  // sharp peak: at least 4x above every sidelobe
  CHECK(peak / max_side >= 4.0);
}

TEST_CASE("preamble matches the frozen test vector") {
  std::ifstream f(BIA_SOURCE_DIR "/data/preamble_256.txt");
  REQUIRE(f.good());
  cvec frozen;
  double re, im;
  while (f >> re >> im) frozen.emplace_back(re, im);
  const cvec p = build_preamble();
  REQUIRE(frozen.size() == p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    CHECK(frozen[i].real() == p[i].real());
    CHECK(frozen[i].imag() == p[i].imag());
  }
}

TEST_CASE("detection in noiseless silence at a known offset") {
  const cvec p = build_preamble();
  cvec stream(4000, cplx(0.0, 0.0));
  for (int i = 0; i < kPreambleLen; ++i) stream[1000 + i] = p[i];
  const DetectionResult d = detect_packet(stream, 0.5);
  CHECK(d.detected);
  CHECK(d.sample_offset == 1000);
  CHECK(d.peak_metric == doctest::Approx(1.0).epsilon(1e-9));

  // the normalized metric is scale-invariant
  cvec scaled = stream;
  for (cplx& v : scaled) v *= 0.01;
  const DetectionResult ds = detect_packet(scaled, 0.5);
  CHECK(ds.detected);
  CHECK(ds.sample_offset == 1000);
}

TEST_CASE("noiseless detection offset is exact over 100 random placements") {
  const cvec p = build_preamble();
  Rng rng(31);
  int exact = 0;
  for (int t = 0; t < 100; ++t) {
    const std::size_t len = 1500 + static_cast<std::size_t>(rng.uniform() * 4000.0);
    const std::size_t off = static_cast<std::size_t>(rng.uniform() * (len - kPreambleLen));
    cvec stream(len, cplx(0.0, 0.0));
    const double gain = 0.2 + rng.uniform();
    for (int i = 0; i < kPreambleLen; ++i) stream[off + i] = gain * p[i];
    const DetectionResult d = detect_packet(stream, 0.8);
    exact += d.detected && d.sample_offset == off;
  }
  CHECK(exact == 100);
}

TEST_CASE("noise-only smoke test: no false alarms at threshold 0.8") {
  int alarms = 0;
  for (int t = 0; t < 200; ++t) {
    Rng rng(derive_seed(1234, {static_cast<uint64_t>(t)}));
    cvec stream(10000);
    for (cplx& v : stream) v = rng.cgauss();
    alarms += detect_packet(stream, 0.8).detected;
  }
  CHECK(alarms == 0);
}

TEST_CASE("argument validation") {
  cvec s(100);
  CHECK_THROWS_AS(detect_packet(s, 0.8), std::invalid_argument);  // too short
  cvec ok(300);
  CHECK_THROWS_AS(detect_packet(ok, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(detect_packet(ok, 1.0), std::invalid_argument);
}
