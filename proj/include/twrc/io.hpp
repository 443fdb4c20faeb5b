#pragma once
#include <string>
#include <utility>
#include <vector>

#include "twrc/sim_engine.hpp"

namespace twrc {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kCsvHeader =
    "scheme,design,signal_set,fading,k_factor_db,snr_db,frames,bits,bit_errors,ber,"
    "ci_low,ci_high";

// Flat "key = value" per line; '#' starts a comment; later keys win.
// Insertion order is kept so a resolved config can be echoed verbatim.
struct KvConfig {
  std::vector<std::pair<std::string, std::string>> items;

  bool has(const std::string& key) const;
  std::string get(const std::string& key, const std::string& fallback = "") const;
  void set(const std::string& key, const std::string& value);  // override or append
};

KvConfig parse_kv_text(const std::string& text);
KvConfig load_kv_file(const std::string& path);

// "16,18,20" or "16:2:38" (start:step:stop, stop inclusive)
std::vector<double> parse_snr_list(const std::string& spec);

struct SchemeSpec {
  Scheme scheme = Scheme::DnfXor;
  std::string design;  // dstc design token
};

// "dnf_xor" or "dstc:<design token>"
SchemeSpec parse_scheme_token(const std::string& token);
// tokens separated by ';' (design tokens may contain commas)
std::vector<SchemeSpec> parse_scheme_list(const std::string& spec);
RelayDecoder parse_decoder(const std::string& token);
FadingModel parse_fading(const std::string& kind, const std::string& k_db);

void write_csv(const std::string& path, const std::vector<BerRecord>& rows);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  int column(const std::string& name) const;  // -1 when absent
};

CsvTable read_csv(const std::string& path);
std::vector<BerRecord> records_from_csv(const CsvTable& t);

void write_manifest(const std::string& path, const KvConfig& resolved, uint64_t seed,
                    const std::string& started_utc, const std::string& finished_utc,
                    const std::vector<std::string>& outputs);
std::string utc_now_string();

struct PlotdataResult {
  std::vector<std::string> files;  // one per (scheme, design)
  std::string index_path;
  int zero_ber_rows = 0;
};

// Two-column "snr_db ber" files, one per curve, values copied verbatim
// from the CSV so nothing is lost to reformatting; plus an index file.
PlotdataResult write_plotdata(const std::vector<std::string>& csv_paths,
                              const std::string& out_dir);

}  // namespace twrc
