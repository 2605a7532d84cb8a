// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "bia/constellation.hpp"
#include "bia/rng.hpp"

using namespace bia;

TEST_CASE("qpsk: bits 00 map to (+1+j)/sqrt(2)") {
  const uint8_t b00[2] = {0, 0};
  const cplx p = map_symbol(Modulation::Qpsk, b00);
  CHECK(p.real() == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(p.imag() == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("round trip over random bits is error free, both modulations") {
  Rng rng(17);
  for (Modulation m : {Modulation::Qpsk, Modulation::Qam16}) {
    std::vector<uint8_t> bits(10000);
    bits.resize(bits.size() - bits.size() % bits_per_symbol(m));
    for (auto& b : bits) b = static_cast<uint8_t>(rng.bit());
    const cvec syms = map_bits(bits, m);
    const std::vector<uint8_t> back = demap_symbols(syms, m);
    REQUIRE(back.size() == bits.size());
    int errors = 0;
    for (std::size_t i = 0; i < bits.size(); ++i) errors += bits[i] != back[i];
    CHECK(errors == 0);
  }
}

TEST_CASE("exhaustive demap(map(v)) identity") {
  for (Modulation m : {Modulation::Qpsk, Modulation::Qam16}) {
    const int bps = bits_per_symbol(m);
    for (int v = 0; v < (1 << bps); ++v) {
      uint8_t bits[4], back[4];
      for (int b = 0; b < bps; ++b) bits[b] = static_cast<uint8_t>((v >> (bps - 1 - b)) & 1);
      demap_symbol(map_symbol(m, std::span<const uint8_t>(bits, bps)), m, back);
      for (int b = 0; b < bps; ++b) CHECK(back[b] == bits[b]);
    }
  }
}

TEST_CASE("average constellation power is exactly 1") {
  for (Modulation m : {Modulation::Qpsk, Modulation::Qam16}) {
    double p = 0.0;
    const cvec pts = constellation_points(m);
    for (const cplx& v : pts) p += std::norm(v);
    CHECK(p / pts.size() == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("gray property: nearest neighbors differ in one bit") {
  for (Modulation m : {Modulation::Qpsk, Modulation::Qam16}) {
    const int bps = bits_per_symbol(m);
    const cvec pts = constellation_points(m);
    // min distance between distinct points
    double dmin = 1e9;
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = i + 1; j < pts.size(); ++j)
        dmin = std::min(dmin, std::abs(pts[i] - pts[j]));
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = i + 1; j < pts.size(); ++j) {
        if (std::abs(pts[i] - pts[j]) > dmin * 1.0001) continue;
        int hamming = 0;
        for (int b = 0; b < bps; ++b)
          hamming += ((i >> b) & 1u) != ((j >> b) & 1u);
        CHECK(hamming == 1);
      }
  }
}

TEST_CASE("malformed bit length is rejected") {
  std::vector<uint8_t> bits(3, 0);
  CHECK_THROWS_AS(map_bits(bits, Modulation::Qpsk), std::invalid_argument);
  CHECK_THROWS_AS(map_bits(bits, Modulation::Qam16), std::invalid_argument);
}

TEST_CASE("frozen mapping tables match the implementation") {
  const struct {
    Modulation m;
    const char* file;
  } cases[] = {{Modulation::Qpsk, BIA_SOURCE_DIR "/data/gray_qpsk.txt"},
               {Modulation::Qam16, BIA_SOURCE_DIR "/data/gray_qam16.txt"}};
  for (const auto& c : cases) {
    std::ifstream f(c.file);
    REQUIRE_MESSAGE(f.good(), c.file);
    const cvec frozen = read_complex_table(f);
    const cvec pts = constellation_points(c.m);
    REQUIRE(frozen.size() == pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
      CHECK(frozen[i].real() == pts[i].real());  // 17-digit decimal is lossless
      CHECK(frozen[i].imag() == pts[i].imag());
    }
  }
}

TEST_CASE("modulation names") {
  CHECK(modulation_from_name("qpsk") == Modulation::Qpsk);
  CHECK(modulation_from_name("qam16") == Modulation::Qam16);
  CHECK_THROWS_AS(modulation_from_name("bpsk"), std::invalid_argument);
}
