// SPDX-License-Identifier: Apache-2.0
#include "bia/harness.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "bia/channel.hpp"
#include "bia/receiver.hpp"
#include "bia/version.hpp"

namespace bia {

Scheme scheme_from_name(const std::string& name) {
  if (name == "bia") return Scheme::Bia;
  if (name == "tdma") return Scheme::Tdma;
  if (name == "both") return Scheme::Both;
  throw std::invalid_argument("unknown scheme: " + name);
}

Granularity granularity_from_name(const std::string& name) {
  if (name == "symbol") return Granularity::Symbol;
  if (name == "packet") return Granularity::Packet;
  throw std::invalid_argument("unknown granularity: " + name);
}

OutFormat format_from_name(const std::string& name) {
  if (name == "csv") return OutFormat::Csv;
  if (name == "json") return OutFormat::Json;
  throw std::invalid_argument("unknown format: " + name);
}

const char* scheme_name(Scheme s) {
  switch (s) {
    case Scheme::Bia: return "bia";
    case Scheme::Tdma: return "tdma";
    default: return "both";
  }
}

const char* granularity_name(Granularity g) {
  return g == Granularity::Symbol ? "symbol" : "packet";
}

const char* format_name(OutFormat f) { return f == OutFormat::Csv ? "csv" : "json"; }

void ExperimentConfig::validate() const {
  if (snr_db_list.empty()) throw std::invalid_argument("config: snr_db_list must be nonempty");
  if (trials < 0) throw std::invalid_argument("config: trials must be >= 0");
  if (!(drift_deg_per_slot >= 0.0)) throw std::invalid_argument("config: drift-deg must be >= 0");
  if (!(inter_state_correlation >= 0.0 && inter_state_correlation <= 1.0))
    throw std::invalid_argument("config: rho must be in [0, 1]");
  if (symbols_per_slot < 1) throw std::invalid_argument("config: symbols-per-slot must be >= 1");
  if (num_subcarriers < 1) throw std::invalid_argument("config: subcarriers must be >= 1");
  if (workers < 1) throw std::invalid_argument("config: workers must be >= 1");
}

uint64_t trial_seed(uint64_t master_seed, int snr_index, int trial) {
  return derive_seed(master_seed,
                     {static_cast<uint64_t>(snr_index), static_cast<uint64_t>(trial)});
}

namespace {

// Sub-stream labels hung off the trial seed.
enum : uint64_t { kChanStream = 1, kBiaData = 2, kBiaNoise = 3, kTdmaData = 4, kTdmaNoise = 5 };

ChannelSet draw_trial_channels(const ExperimentConfig& cfg, uint64_t seed) {
  ChannelModelConfig cm;
  cm.num_users = 2;
  cm.num_states = 2;
  cm.num_tx = 2;
  cm.num_subcarriers = cfg.num_subcarriers;
  cm.inter_state_correlation = cfg.inter_state_correlation;
  cm.phase_drift_per_slot_deg = cfg.drift_deg_per_slot;
  cm.rng_seed = derive_seed(seed, {kChanStream});
  Rng chan_rng(cm.rng_seed);
  return draw_channels(cm, chan_rng);
}

}  // namespace

ChannelSet trial_channels(const ExperimentConfig& cfg, int snr_index, int trial) {
  if (!cfg.channel_file.empty()) return load_channel_table(cfg.channel_file);
  return draw_trial_channels(cfg, trial_seed(cfg.master_seed, snr_index, trial));
}

namespace {

std::string iso8601_utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string config_echo(const ExperimentConfig& cfg) {
  std::ostringstream os;
  os << "scheme=" << scheme_name(cfg.scheme) << '\n';
  os << "snr=";
  for (std::size_t i = 0; i < cfg.snr_db_list.size(); ++i)
    os << (i ? "," : "") << format_double(cfg.snr_db_list[i]);
  os << '\n';
  os << "trials=" << cfg.trials << '\n';
  os << "granularity=" << granularity_name(cfg.granularity) << '\n';
  os << "drift-deg=" << format_double(cfg.drift_deg_per_slot) << '\n';
  os << "rho=" << format_double(cfg.inter_state_correlation) << '\n';
  os << "symbols-per-slot=" << cfg.symbols_per_slot << '\n';
  os << "subcarriers=" << cfg.num_subcarriers << '\n';
  os << "modulation=" << modulation_name(cfg.modulation) << '\n';
  os << "seed=" << cfg.master_seed << '\n';
  os << "format=" << format_name(cfg.format) << '\n';
  if (!cfg.channel_file.empty()) os << "channel-file=" << cfg.channel_file << '\n';
  return os.str();
}

TrialRecord make_record(const char* scheme, const ExperimentConfig& cfg, int snr_index, int trial,
                        uint64_t seed, double sum_rate, const LinkResult& lr) {
  TrialRecord r;
  r.scheme = scheme;
  r.snr_db = cfg.snr_db_list[snr_index];
  r.snr_index = snr_index;
  r.trial = trial;
  r.sum_rate_bps_hz = sum_rate;
  r.aevms_u1 = lr.aevms_user[0];
  r.aevms_u2 = lr.aevms_user[1];
  r.pp_sinr_db_u1 = lr.pp_sinr_db(0);
  r.pp_sinr_db_u2 = lr.pp_sinr_db(1);
  r.ber_u1 = lr.ber_user[0];
  r.ber_u2 = lr.ber_user[1];
  r.residual_ratio = lr.residual_ratio_adjacent();
  r.ill_cond_count = lr.ill_conditioned_count;
  r.seed = seed;
  return r;
}

}  // namespace

ResultSet run_sweep(const ExperimentConfig& cfg) {
  cfg.validate();

  std::optional<ChannelSet> fixed_channels;
  if (!cfg.channel_file.empty()) {
    fixed_channels = load_channel_table(cfg.channel_file);
    if (fixed_channels->num_users() < 2 || fixed_channels->num_states() < 2 ||
        fixed_channels->num_tx() != 2)
      throw std::invalid_argument("channel file: need 2 users, >= 2 states, 2 tx antennas");
  }

  const int per_trial = cfg.scheme == Scheme::Both ? 2 : 1;
  const int num_snr = static_cast<int>(cfg.snr_db_list.size());
  const std::size_t num_tasks = static_cast<std::size_t>(num_snr) * cfg.trials;

  ResultSet rs;
  rs.meta.version = kVersion;
  rs.meta.timestamp_utc = iso8601_utc_now();
  rs.meta.config_echo = config_echo(cfg);
  rs.records.assign(num_tasks * per_trial, TrialRecord{});

  const int F = fixed_channels ? fixed_channels->num_subcarriers() : cfg.num_subcarriers;

  auto run_task = [&](std::size_t task) {
    const int snr_index = static_cast<int>(task / cfg.trials);
    const int trial = static_cast<int>(task % cfg.trials);
    const uint64_t seed = trial_seed(cfg.master_seed, snr_index, trial);

    const ChannelSet ch = fixed_channels ? *fixed_channels : draw_trial_channels(cfg, seed);

    LinkConfig lc;
    lc.snr_db = cfg.snr_db_list[snr_index];
    lc.noise_variance = 1.0;
    lc.symbols_per_slot = cfg.symbols_per_slot;
    lc.num_subcarriers = F;
    lc.modulation = cfg.modulation;
    lc.packet_granularity = cfg.granularity == Granularity::Packet;
    lc.drift_deg_per_slot = cfg.drift_deg_per_slot;

    const double P = lc.total_power();
    const SupersymbolSchedule schedule = build_schedule();
    std::size_t slot = task * per_trial;
    if (cfg.scheme != Scheme::Tdma) {
      Rng data(derive_seed(seed, {kBiaData}));
      Rng noise(derive_seed(seed, {kBiaNoise}));
      const LinkResult lr = run_bia_link(ch, schedule, lc, data, noise);
      rs.records[slot++] = make_record("bia", cfg, snr_index, trial, seed, rate_bia(ch, P, 2, 2), lr);
    }
    if (cfg.scheme != Scheme::Bia) {
      Rng data(derive_seed(seed, {kTdmaData}));
      Rng noise(derive_seed(seed, {kTdmaNoise}));
      const LinkResult lr = run_tdma_link(ch, lc, data, noise);
      rs.records[slot++] = make_record("tdma", cfg, snr_index, trial, seed, rate_tdma(ch, P, 2), lr);
    }
  };

  if (cfg.workers <= 1 || num_tasks <= 1) {
    for (std::size_t t = 0; t < num_tasks; ++t) run_task(t);
  } else {
    // Records land at precomputed slots, so scheduling cannot change output.
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t t = next.fetch_add(1); t < num_tasks; t = next.fetch_add(1)) run_task(t);
    };
    std::vector<std::thread> pool;
    const int n = std::min<int>(cfg.workers, static_cast<int>(num_tasks));
    pool.reserve(n);
    for (int i = 0; i < n; ++i) pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();
  }
  return rs;
}

void emit_csv(const ResultSet& results, std::ostream& out) {
  out << "scheme,snr_db,trial,sum_rate_bps_hz,aevms_u1,aevms_u2,pp_sinr_db_u1,pp_sinr_db_u2,"
         "ber_u1,ber_u2,residual_ratio,ill_cond_count,seed\n";
  for (const TrialRecord& r : results.records) {
    out << r.scheme << ',' << format_double(r.snr_db) << ',' << r.trial << ','
        << format_double(r.sum_rate_bps_hz) << ',' << format_double(r.aevms_u1) << ','
        << format_double(r.aevms_u2) << ',' << format_double(r.pp_sinr_db_u1) << ','
        << format_double(r.pp_sinr_db_u2) << ',' << format_double(r.ber_u1) << ','
        << format_double(r.ber_u2) << ',' << format_double(r.residual_ratio) << ','
        << r.ill_cond_count << ',' << r.seed << '\n';
  }
}

void emit_json(const ResultSet& results, std::ostream& out) {
  nlohmann::json meta;
  meta["version"] = results.meta.version;
  meta["timestamp_utc"] = results.meta.timestamp_utc;
  meta["config"] = results.meta.config_echo;

  nlohmann::json records = nlohmann::json::array();
  for (const TrialRecord& r : results.records) {
    // +inf PP-SINR (zero AEVMS, noiseless only) serializes as null.
    nlohmann::json j;
    j["scheme"] = r.scheme;
    j["snr_db"] = r.snr_db;
    j["trial"] = r.trial;
    j["sum_rate_bps_hz"] = r.sum_rate_bps_hz;
    j["aevms_u1"] = r.aevms_u1;
    j["aevms_u2"] = r.aevms_u2;
    j["pp_sinr_db_u1"] = r.pp_sinr_db_u1;
    j["pp_sinr_db_u2"] = r.pp_sinr_db_u2;
    j["ber_u1"] = r.ber_u1;
    j["ber_u2"] = r.ber_u2;
    j["residual_ratio"] = r.residual_ratio;
    j["ill_cond_count"] = r.ill_cond_count;
    j["seed"] = r.seed;
    records.push_back(std::move(j));
  }
  nlohmann::json root;
  root["metadata"] = std::move(meta);
  root["records"] = std::move(records);
  out << root.dump(2) << '\n';
}

void emit(const ResultSet& results, const ExperimentConfig& cfg) {
  const auto write = [&](std::ostream& os) {
    if (cfg.format == OutFormat::Csv)
      emit_csv(results, os);
    else
      emit_json(results, os);
    if (!os) throw std::runtime_error("emit: write failed");
  };
  if (cfg.output_path.empty()) {
    write(std::cout);
    return;
  }
  std::ofstream f(cfg.output_path);
  if (!f) throw std::runtime_error("emit: cannot open " + cfg.output_path);
  write(f);
  f.flush();
  if (!f) throw std::runtime_error("emit: write failed for " + cfg.output_path);
}

}  // namespace bia
