#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "twrc/channel.hpp"
#include "twrc/protocol.hpp"

namespace twrc {

enum class Scheme { DnfXor, Dstc };

struct SimConfig {
  Scheme scheme = Scheme::DnfXor;
  std::string design_name;  // dstc only, a design token
  std::string signal_set = "psk4";
  FadingModel fading;
  std::vector<double> snr_db_list;
  long long max_frames = 10'000'000;
  long long min_bit_errors = 200;
  uint64_t master_seed = 0;
  int workers = 1;
  RelayDecoder decoder = RelayDecoder::Auto;
};

struct BerRecord {
  std::string scheme;
  std::string design;
  std::string signal_set;
  std::string fading;      // "rayleigh" | "rician"
  bool has_k_factor = false;
  double k_factor_db = 0.0;
  double snr_db = 0.0;
  long long frames = 0;
  long long bits = 0;        // both directions
  long long bit_errors = 0;  // both directions
  double ber = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
};

// 95% by default; z is the standard normal quantile
std::pair<double, double> wilson_ci(long long errors, long long trials,
                                    double z = 1.959963984540054);

// Monte Carlo sweep over cfg.snr_db_list. Each frame draws its own RNG
// stream keyed by (master_seed, snr index, frame index), and stopping
// is evaluated only at fixed 65536-frame block boundaries, so the
// records do not depend on cfg.workers.
std::vector<BerRecord> run_sweep(const SimConfig& cfg);

// Least-squares slope of log10(BER) against SNR in dB, scaled to
// decades per 10 dB; rows with ber = 0 are ignored.
double estimate_diversity_slope(const std::vector<BerRecord>& records);

}  // namespace twrc
