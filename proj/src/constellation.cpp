// SPDX-License-Identifier: Apache-2.0
#include "bia/constellation.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace bia {

namespace {

constexpr double kQpskAmp = 0.70710678118654752440;  // 1/sqrt(2)
constexpr double kQamScale = 0.31622776601683793320;  // 1/sqrt(10)

// Gray pair -> amplitude level (in units of kQamScale).
double qam_level(uint8_t b_hi, uint8_t b_lo) {
  const int code = (b_hi << 1) | b_lo;
  switch (code) {
    case 0b00: return -3.0;
    case 0b01: return -1.0;
    case 0b11: return +1.0;
    default: return +3.0;  // 0b10
  }
}

void qam_level_decide(double v, uint8_t* b_hi, uint8_t* b_lo) {
  const double x = v / kQamScale;
  int code;
  if (x < -2.0) code = 0b00;
  else if (x < 0.0) code = 0b01;
  else if (x < 2.0) code = 0b11;
  else code = 0b10;
  *b_hi = static_cast<uint8_t>(code >> 1);
  *b_lo = static_cast<uint8_t>(code & 1);
}

}  // namespace

int bits_per_symbol(Modulation m) { return m == Modulation::Qpsk ? 2 : 4; }

const char* modulation_name(Modulation m) { return m == Modulation::Qpsk ? "qpsk" : "qam16"; }

Modulation modulation_from_name(const std::string& name) {
  if (name == "qpsk") return Modulation::Qpsk;
  if (name == "qam16" || name == "16qam") return Modulation::Qam16;
  throw std::invalid_argument("unknown modulation: " + name);
}

cplx map_symbol(Modulation m, std::span<const uint8_t> bits) {
  if (static_cast<int>(bits.size()) != bits_per_symbol(m))
    throw std::invalid_argument("map_symbol: wrong bit count");
  if (m == Modulation::Qpsk) {
    const double i = bits[0] ? -kQpskAmp : kQpskAmp;
    const double q = bits[1] ? -kQpskAmp : kQpskAmp;
    return cplx(i, q);
  }
  const double i = kQamScale * qam_level(bits[0], bits[1]);
  const double q = kQamScale * qam_level(bits[2], bits[3]);
  return cplx(i, q);
}

cvec map_bits(std::span<const uint8_t> bits, Modulation m) {
  const int bps = bits_per_symbol(m);
  if (bits.size() % static_cast<std::size_t>(bps) != 0)
    throw std::invalid_argument("map_bits: bit count not divisible by bits per symbol");
  cvec out;
  out.reserve(bits.size() / bps);
  for (std::size_t i = 0; i < bits.size(); i += bps)
    out.push_back(map_symbol(m, bits.subspan(i, bps)));
  return out;
}

void demap_symbol(cplx y, Modulation m, uint8_t* bits_out) {
  if (m == Modulation::Qpsk) {
    bits_out[0] = y.real() < 0.0 ? 1 : 0;
    bits_out[1] = y.imag() < 0.0 ? 1 : 0;
    return;
  }
  qam_level_decide(y.real(), &bits_out[0], &bits_out[1]);
  qam_level_decide(y.imag(), &bits_out[2], &bits_out[3]);
}

std::vector<uint8_t> demap_symbols(std::span<const cplx> symbols, Modulation m) {
  const int bps = bits_per_symbol(m);
  std::vector<uint8_t> out(symbols.size() * bps);
  for (std::size_t i = 0; i < symbols.size(); ++i) demap_symbol(symbols[i], m, &out[i * bps]);
  return out;
}

cvec constellation_points(Modulation m) {
  const int bps = bits_per_symbol(m);
  cvec pts;
  pts.reserve(std::size_t{1} << bps);
  for (int v = 0; v < (1 << bps); ++v) {
    uint8_t bits[4];
    for (int b = 0; b < bps; ++b) bits[b] = static_cast<uint8_t>((v >> (bps - 1 - b)) & 1);
    pts.push_back(map_symbol(m, std::span<const uint8_t>(bits, bps)));
  }
  return pts;
}

void write_constellation_table(Modulation m, std::ostream& out) {
  char buf[80];
  for (const cplx& p : constellation_points(m)) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g\n", p.real(), p.imag());
    out << buf;
  }
}

cvec read_complex_table(std::istream& in) {
  cvec out;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    double re, im;
    if (ls >> re >> im) out.emplace_back(re, im);
  }
  return out;
}

}  // namespace bia
