// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <span>

#include "bia/types.hpp"

namespace bia {

inline constexpr int kPreambleLen = 256;

// Known 256-sample unit-modulus pseudo-random preamble (fixed seed). The
// seed was chosen so the aperiodic autocorrelation has max |sidelobe|
// below 0.25 of the lag-0 peak; the exact sequence is frozen in
// data/preamble_256.txt.
cvec build_preamble();

struct DetectionResult {
  bool detected = false;
  std::size_t sample_offset = 0;
  double peak_metric = 0.0;  // normalized cross-correlation in [0, 1]
};

// Scans the stream for the preamble with a normalized cross-correlation
//   m(t) = |sum_i conj(p[i]) x[t+i]| / (||p|| * ||x[t..t+255]||)
// and returns the first offset where m exceeds the threshold. When nothing
// crosses, `detected` is false and offset/metric describe the best peak
// seen. Scale-invariant by construction. Stream must hold at least 256
// samples.
DetectionResult detect_packet(std::span<const cplx> stream, double threshold);

}  // namespace bia
