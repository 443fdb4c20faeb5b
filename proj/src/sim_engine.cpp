#include "twrc/sim_engine.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>

namespace twrc {

std::pair<double, double> wilson_ci(long long errors, long long trials, double z) {
  if (trials <= 0) return {0.0, 1.0};
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(errors) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

namespace {

constexpr long long kBlockFrames = 65536;

struct Tally {
  long long frames = 0;
  long long bits = 0;
  long long errors = 0;

  void add(const FrameResult& fr) {
    ++frames;
    bits += 2LL * fr.bits_sent_per_direction;
    errors += fr.bit_errors_a_to_b + fr.bit_errors_b_to_a;
  }
  void merge(const Tally& o) {
    frames += o.frames;
    bits += o.bits;
    errors += o.errors;
  }
};

struct FrameJob {
  const SimConfig* cfg;
  const SignalSet* s;
  const DstcDesign* d;  // null for the baseline
  double es;
  uint64_t snr_index;

  Tally run_range(long long first, long long last) const {
    Tally t;
    for (long long f = first; f < last; ++f) {
      Xoshiro256pp rng = frame_rng(cfg->master_seed, snr_index, static_cast<uint64_t>(f));
      // channel first so both schemes see the same fades per frame
      ChannelRealization ch = draw_channel(cfg->fading, rng);
      FrameResult fr = d ? run_frame_dstc(*d, *s, es, ch, rng, cfg->decoder)
                         : run_frame_dnf_xor(*s, es, ch, rng);
      t.add(fr);
    }
    return t;
  }
};

Tally run_block(const FrameJob& job, long long first, long long count, int workers) {
  if (workers <= 1 || count < 2 * workers) return job.run_range(first, first + count);
  std::vector<Tally> parts(workers);
  std::vector<std::thread> threads;
  threads.reserve(workers);
  const long long chunk = (count + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const long long lo = first + w * chunk;
    const long long hi = std::min(first + count, lo + chunk);
    if (lo >= hi) break;
    threads.emplace_back([&job, &parts, w, lo, hi] { parts[w] = job.run_range(lo, hi); });
  }
  for (auto& th : threads) th.join();
  Tally t;
  for (const auto& p : parts) t.merge(p);
  return t;
}

}  // namespace

std::vector<BerRecord> run_sweep(const SimConfig& cfg) {
  if (cfg.snr_db_list.empty()) throw std::invalid_argument("run_sweep: empty SNR list");
  if (cfg.max_frames < 1) throw std::invalid_argument("run_sweep: max_frames must be >= 1");
  if (cfg.min_bit_errors < 0) throw std::invalid_argument("run_sweep: negative min_bit_errors");
  if (cfg.workers < 1) throw std::invalid_argument("run_sweep: workers must be >= 1");
  if (cfg.scheme == Scheme::Dstc && cfg.design_name.empty())
    throw std::invalid_argument("run_sweep: dstc scheme needs a design");

  const SignalSet s = parse_signal_set(cfg.signal_set);
  DstcDesign design;
  if (cfg.scheme == Scheme::Dstc) design = parse_dstc(cfg.design_name);

  std::vector<BerRecord> out;
  out.reserve(cfg.snr_db_list.size());
  for (size_t si = 0; si < cfg.snr_db_list.size(); ++si) {
    const double snr_db = cfg.snr_db_list[si];
    FrameJob job;
    job.cfg = &cfg;
    job.s = &s;
    job.d = cfg.scheme == Scheme::Dstc ? &design : nullptr;
    job.es = std::pow(10.0, snr_db / 10.0);
    job.snr_index = static_cast<uint64_t>(si);

    Tally total;
    while (total.frames < cfg.max_frames) {
      const long long count = std::min(kBlockFrames, cfg.max_frames - total.frames);
      total.merge(run_block(job, total.frames, count, cfg.workers));
      if (total.errors >= cfg.min_bit_errors) break;
    }

    BerRecord r;
    r.scheme = cfg.scheme == Scheme::Dstc ? "dstc" : "dnf_xor";
    r.design = cfg.scheme == Scheme::Dstc ? cfg.design_name : "";
    r.signal_set = s.name;
    r.fading = cfg.fading.kind == Fading::Rician ? "rician" : "rayleigh";
    r.has_k_factor = cfg.fading.kind == Fading::Rician;
    r.k_factor_db = cfg.fading.k_factor_db;
    r.snr_db = snr_db;
    r.frames = total.frames;
    r.bits = total.bits;
    r.bit_errors = total.errors;
    r.ber = total.bits > 0 ? static_cast<double>(total.errors) / total.bits : 0.0;
    auto ci = wilson_ci(total.errors, total.bits);
    r.ci_low = ci.first;
    r.ci_high = ci.second;
    out.push_back(std::move(r));
  }
  return out;
}

double estimate_diversity_slope(const std::vector<BerRecord>& records) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& r : records)
    if (r.ber > 0.0) pts.emplace_back(r.snr_db, std::log10(r.ber));
  if (pts.size() < 2)
    throw std::invalid_argument("diversity slope needs at least two records with ber > 0");
  double mx = 0, my = 0;
  for (auto& [x, y] : pts) {
    mx += x;
    my += y;
  }
  mx /= pts.size();
  my /= pts.size();
  double num = 0, den = 0;
  for (auto& [x, y] : pts) {
    num += (x - mx) * (y - my);
    den += (x - mx) * (x - mx);
  }
  if (den == 0.0) throw std::invalid_argument("diversity slope needs distinct SNR values");
  return num / den * 10.0;
}

}  // namespace twrc
