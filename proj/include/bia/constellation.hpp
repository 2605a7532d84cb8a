// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "bia/types.hpp"

namespace bia {

enum class Modulation { Qpsk, Qam16 };

int bits_per_symbol(Modulation m);
const char* modulation_name(Modulation m);
Modulation modulation_from_name(const std::string& name);  // throws on unknown

// Gray-mapped, unit-average-power constellations.
// QPSK, bits (b0 b1): b0 selects I, b1 selects Q; 0 -> +1/sqrt(2), 1 -> -1/sqrt(2).
// 16-QAM, bits (b0 b1 b2 b3): (b0 b1) select the I level, (b2 b3) the Q level,
// Gray levels 00,01,11,10 -> -3,-1,+1,+3 scaled by 1/sqrt(10).
cplx map_symbol(Modulation m, std::span<const uint8_t> bits);

// Maps a bit stream; length must be a multiple of bits_per_symbol.
cvec map_bits(std::span<const uint8_t> bits, Modulation m);

// Hard-decision demapping (nearest constellation point).
void demap_symbol(cplx y, Modulation m, uint8_t* bits_out);
std::vector<uint8_t> demap_symbols(std::span<const cplx> symbols, Modulation m);

// All points in symbol-value order (bits read MSB-first).
cvec constellation_points(Modulation m);

// Frozen-vector I/O: one "re im" pair per line, 17 significant digits.
void write_constellation_table(Modulation m, std::ostream& out);
cvec read_complex_table(std::istream& in);

}  // namespace bia
