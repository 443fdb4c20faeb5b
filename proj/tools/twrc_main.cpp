#include <complex>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "twrc/dstc.hpp"
#include "twrc/io.hpp"
#include "twrc/linear_design.hpp"
#include "twrc/sim_engine.hpp"

namespace {

using namespace twrc;

std::string fmt_complex(std::complex<double> z) {
  std::ostringstream os;
  os.precision(12);
  os << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "j";
  return os.str();
}

std::string subspace_line(const FadeSubspace& f) {
  std::ostringstream os;
  os << "dim " << f.dim << ": ";
  if (f.dim == 1 && f.ratio_at_infinity) {
    os << "<[0, 1]>";
  } else if (f.dim == 1 && f.canonical_ratio) {
    os << "<[1, " << fmt_complex(*f.canonical_ratio) << "]>";
  } else {
    os << "basis columns:";
    for (int c = 0; c < f.basis.cols(); ++c) {
      os << " [";
      for (int r = 0; r < f.basis.rows(); ++r) {
        if (r) os << ", ";
        os << fmt_complex(f.basis(r, c));
      }
      os << "]";
    }
  }
  return os.str();
}

void print_spectrum(std::ostream& out, const RankSpectrum& spec, int n_t) {
  out << "nonzero difference matrices: " << spec.total << "\n";
  out << "rank spectrum:";
  for (const auto& [rank, count] : spec.counts) out << " rank " << rank << ": " << count << ";";
  out << "\n";
  out << "minimum rank: " << spec.min_rank << "\n";
  if (spec.subspaces.empty()) {
    out << "trivial subspace only, min rank " << spec.min_rank << "\n";
  } else {
    out << "singular fade subspaces (" << spec.subspaces.size() << "):\n";
    for (const auto& f : spec.subspaces) out << "  " << subspace_line(f) << "\n";
  }
  (void)n_t;
}

int cmd_analyze(const std::string& design, const std::string& set_token,
                const std::string& out_path) {
  SignalSet s = parse_signal_set(set_token);
  std::ostringstream report;
  report << "signal set: " << s.name << " (" << s.size() << " points, " << s.bits_per_symbol
         << " bits/symbol, d_min " << s.min_distance() << ")\n";

  if (is_dstc_token(design)) {
    DstcDesign d = parse_dstc(design);
    report << "design: " << d.name << " (two-node distributed, 2x2)\n";
    SingularityResult sm = is_singularity_minimal(d, s);
    if (sm.minimal) {
      report << "singularity minimal over " << s.name << ": yes\n";
    } else {
      report << "singularity minimal over " << s.name << ": NOT singularity minimal\n";
      if (sm.witness) {
        report << "witness: dx_a = (" << fmt_complex(sm.witness->dx_a(0)) << ", "
               << fmt_complex(sm.witness->dx_a(1)) << "), dx_b = ("
               << fmt_complex(sm.witness->dx_b(0)) << ", " << fmt_complex(sm.witness->dx_b(1))
               << "), det = " << fmt_complex(sm.witness->det) << "\n";
      }
    }
    report << "coding gain: " << coding_gain(d, s) << "\n";
    RankSpectrum spec = rank_spectrum(dstc_as_linear_design(d), s, 1e-9, 20'000'000);
    print_spectrum(report, spec, 2);
  } else {
    LinearDesign d = named_design(design);
    report << "design: " << d.name << " (" << d.n_t << "x" << d.T << ", " << d.K
           << " complex symbols)\n";
    if (d.name == "ciod2" || d.name == "ciod4")
      report << "coordinate product distance: " << coordinate_product_distance(s) << "\n";
    RankSpectrum spec = rank_spectrum(d, s, 1e-9, 20'000'000);
    print_spectrum(report, spec, d.n_t);
  }

  std::cout << report.str();
  if (!out_path.empty()) {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    out << report.str();
    std::cout << "report written to " << out_path << "\n";
  }
  return 0;
}

int cmd_list_designs() {
  std::cout << "space-time block designs (analyze):\n";
  for (const auto& [name, desc] : design_catalogue())
    std::cout << "  " << name << "  -  " << desc << "\n";
  std::cout << "distributed relay designs (analyze, simulate via dstc:<token>):\n";
  std::cout << "  identity  -  both nodes transmit uncoded rows\n";
  std::cout << "  construction1  -  golden-number generators, unitary, for square QAM"
               " and lattice sets\n";
  std::cout << "  construction2:theta=<rad>  -  identity plus rotated generator; pi/4"
               " for QAM, pi/2^k for 2^k-PSK\n";
  std::cout << "  transcendental:<a,b,c,d>  -  row-repeated generators with e^j twist;"
               " complex entries like 0.5+0.5j\n";
  return 0;
}

int cmd_simulate(const std::string& config_path, KvConfig overrides, bool have_workers_flag) {
  KvConfig cfg;
  if (!config_path.empty()) cfg = load_kv_file(config_path);
  for (const auto& [k, v] : overrides.items) cfg.set(k, v);

  // worker precedence: flag > TWRC_WORKERS > config > 1
  if (!have_workers_flag) {
    if (const char* env = std::getenv("TWRC_WORKERS"); env && *env)
      cfg.set("run.workers", env);
  }

  const std::string out_path = cfg.get("io.out", "results.csv");
  cfg.set("io.out", out_path);

  std::vector<SchemeSpec> schemes = parse_scheme_list(cfg.get("schemes", "dnf_xor"));
  SimConfig base;
  base.signal_set = cfg.get("signal_set", "psk4");
  base.fading = parse_fading(cfg.get("fading.kind", "rayleigh"), cfg.get("fading.k_factor_db"));
  base.snr_db_list = parse_snr_list(cfg.get("snr.list_db", "10:5:30"));
  base.max_frames = std::stoll(cfg.get("stop.max_frames", "10000000"));
  base.min_bit_errors = std::stoll(cfg.get("stop.min_bit_errors", "200"));
  base.master_seed = std::stoull(cfg.get("rng.seed", "0"));
  base.workers = std::stoi(cfg.get("run.workers", "1"));
  base.decoder = parse_decoder(cfg.get("run.decoder", "auto"));

  // echo the resolved settings so the manifest reproduces the run
  cfg.set("schemes", cfg.get("schemes", "dnf_xor"));
  cfg.set("signal_set", base.signal_set);
  cfg.set("fading.kind", cfg.get("fading.kind", "rayleigh"));
  cfg.set("snr.list_db", cfg.get("snr.list_db", "10:5:30"));
  cfg.set("stop.max_frames", std::to_string(base.max_frames));
  cfg.set("stop.min_bit_errors", std::to_string(base.min_bit_errors));
  cfg.set("rng.seed", std::to_string(base.master_seed));
  cfg.set("run.workers", std::to_string(base.workers));

  const std::string started = utc_now_string();
  std::vector<BerRecord> rows;
  for (const auto& spec : schemes) {
    SimConfig sc = base;
    sc.scheme = spec.scheme;
    sc.design_name = spec.design;
    auto part = run_sweep(sc);
    rows.insert(rows.end(), part.begin(), part.end());
    std::cout << (spec.scheme == Scheme::Dstc ? "dstc:" + spec.design : std::string("dnf_xor"))
              << ": " << part.size() << " SNR points done\n";
  }

  write_csv(out_path, rows);
  const std::string manifest_path = out_path + ".manifest";
  write_manifest(manifest_path, cfg, base.master_seed, started, utc_now_string(),
                 {out_path});
  std::cout << "wrote " << rows.size() << " rows to " << out_path << " (manifest "
            << manifest_path << ")\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"two-way relay space-time code analysis and simulation"};
  app.require_subcommand(1);

  // analyze
  std::string an_design, an_set = "psk4", an_out;
  auto* analyze = app.add_subcommand("analyze", "rank spectrum, fade subspaces, coding gain");
  analyze->add_option("design", an_design, "design name or dstc token")->required();
  analyze->add_option("signal_set", an_set, "psk<M> or qam<M> (default psk4)");
  analyze->add_option("--out", an_out, "also write the report to a file");

  // simulate
  std::string si_config, si_schemes, si_set, si_fading, si_kdb, si_snr, si_seed, si_out,
      si_decoder, si_maxframes, si_minerrs;
  int si_workers = 0;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo BER sweep to CSV");
  simulate->add_option("--config", si_config, "key = value config file");
  simulate->add_option("--schemes", si_schemes, "e.g. \"dnf_xor; dstc:construction1\"");
  simulate->add_option("--signal-set", si_set, "psk<M> or qam<M>");
  simulate->add_option("--fading", si_fading, "rayleigh | rician");
  simulate->add_option("--k-factor-db", si_kdb, "Rician K factor in dB");
  simulate->add_option("--snr", si_snr, "list \"a,b,c\" or range \"start:step:stop\" in dB");
  simulate->add_option("--max-frames", si_maxframes, "frame cap per SNR point");
  simulate->add_option("--min-bit-errors", si_minerrs, "stop after this many bit errors");
  simulate->add_option("--seed", si_seed, "master seed (default 0, never wall clock)");
  auto* wopt = simulate->add_option("--workers", si_workers, "worker threads");
  simulate->add_option("--decoder", si_decoder, "auto | brute | conditional | qam_fast");
  simulate->add_option("--out", si_out, "output CSV path");

  // plotdata
  std::vector<std::string> pd_csvs;
  std::string pd_out = "plotdata";
  auto* plotdata = app.add_subcommand("plotdata", "split CSVs into per-curve gnuplot files");
  plotdata->add_option("csv", pd_csvs, "input CSV files")->required();
  plotdata->add_option("--out", pd_out, "output directory (default ./plotdata)");

  auto* list = app.add_subcommand("list-designs", "catalogue of supported designs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (list->parsed()) return cmd_list_designs();
    if (analyze->parsed()) return cmd_analyze(an_design, an_set, an_out);
    if (simulate->parsed()) {
      KvConfig overrides;
      if (!si_schemes.empty()) overrides.set("schemes", si_schemes);
      if (!si_set.empty()) overrides.set("signal_set", si_set);
      if (!si_fading.empty()) overrides.set("fading.kind", si_fading);
      if (!si_kdb.empty()) overrides.set("fading.k_factor_db", si_kdb);
      if (!si_snr.empty()) overrides.set("snr.list_db", si_snr);
      if (!si_maxframes.empty()) overrides.set("stop.max_frames", si_maxframes);
      if (!si_minerrs.empty()) overrides.set("stop.min_bit_errors", si_minerrs);
      if (!si_seed.empty()) overrides.set("rng.seed", si_seed);
      if (wopt->count() > 0) overrides.set("run.workers", std::to_string(si_workers));
      if (!si_decoder.empty()) overrides.set("run.decoder", si_decoder);
      if (!si_out.empty()) overrides.set("io.out", si_out);
      return cmd_simulate(si_config, overrides, wopt->count() > 0);
    }
    if (plotdata->parsed()) {
      PlotdataResult res = write_plotdata(pd_csvs, pd_out);
      std::cout << "wrote " << res.files.size() << " curve files and " << res.index_path << "\n";
      if (res.zero_ber_rows > 0)
        std::cout << res.zero_ber_rows << " rows had ber = 0 (kept; see warnings)\n";
      return 0;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
