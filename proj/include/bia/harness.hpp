// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "bia/channel.hpp"
#include "bia/constellation.hpp"
#include "bia/metrics.hpp"
#include "bia/types.hpp"

namespace bia {

enum class Scheme { Bia, Tdma, Both };
enum class Granularity { Symbol, Packet };
enum class OutFormat { Csv, Json };

Scheme scheme_from_name(const std::string& name);
Granularity granularity_from_name(const std::string& name);
OutFormat format_from_name(const std::string& name);
const char* scheme_name(Scheme s);
const char* granularity_name(Granularity g);
const char* format_name(OutFormat f);

struct ExperimentConfig {
  Scheme scheme = Scheme::Both;
  std::vector<double> snr_db_list = {20.0};
  int trials = 100;
  // Symbol granularity holds the channel still inside a supersymbol; packet
  // granularity applies the per-slot phase drift.
  Granularity granularity = Granularity::Symbol;
  double drift_deg_per_slot = 0.0;
  double inter_state_correlation = 0.0;  // rho
  int symbols_per_slot = 16;             // N
  int num_subcarriers = 48;
  Modulation modulation = Modulation::Qpsk;
  uint64_t master_seed = 1;
  std::string output_path;   // empty -> stdout
  OutFormat format = OutFormat::Csv;
  int workers = 1;
  std::string channel_file;  // optional measured-channel table; replaces draws

  void validate() const;  // throws std::invalid_argument
};

struct RunMetadata {
  std::string version;
  std::string timestamp_utc;
  std::string config_echo;  // "key=value" lines matching the config schema
};

struct ResultSet {
  std::vector<TrialRecord> records;
  RunMetadata meta;
};

// Seeded Monte Carlo sweep. Trial (s, i) derives its seed as a pure
// function of (master_seed, s, i); with scheme=both the bia and tdma
// records of a trial share one channel draw (paired comparison). Output is
// deterministic for a given config regardless of worker count.
ResultSet run_sweep(const ExperimentConfig& cfg);

// CSV columns: scheme,snr_db,trial,sum_rate_bps_hz,aevms_u1,aevms_u2,
// pp_sinr_db_u1,pp_sinr_db_u2,ber_u1,ber_u2,residual_ratio,ill_cond_count,
// seed. Doubles carry 17 significant digits.
void emit_csv(const ResultSet& results, std::ostream& out);
void emit_json(const ResultSet& results, std::ostream& out);

// Writes to cfg.output_path (stdout when empty) in cfg.format. Throws
// std::runtime_error on I/O failure.
void emit(const ResultSet& results, const ExperimentConfig& cfg);

// The per-trial seed derivation, exposed so records can be reproduced.
uint64_t trial_seed(uint64_t master_seed, int snr_index, int trial);

// Reproduces the channel draw a sweep used for trial (snr_index, trial).
ChannelSet trial_channels(const ExperimentConfig& cfg, int snr_index, int trial);

}  // namespace bia
