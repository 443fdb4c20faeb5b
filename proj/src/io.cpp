#include "twrc/io.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace twrc {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  fields.push_back(cur);
  return fields;
}

std::string sanitize(const std::string& s) {
  std::string out;
  for (char c : s)
    out += (isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '-') ? c : '_';
  while (!out.empty() && out.back() == '_') out.pop_back();
  return out.empty() ? "curve" : out;
}

}  // namespace

bool KvConfig::has(const std::string& key) const {
  return std::any_of(items.begin(), items.end(), [&](auto& kv) { return kv.first == key; });
}

std::string KvConfig::get(const std::string& key, const std::string& fallback) const {
  std::string v = fallback;
  for (const auto& [k, val] : items)
    if (k == key) v = val;  // later keys win
  return v;
}

void KvConfig::set(const std::string& key, const std::string& value) {
  bool found = false;
  for (auto& [k, val] : items) {
    if (k == key) {  // every duplicate, so get() agrees whichever line wins
      val = value;
      found = true;
    }
  }
  if (!found) items.emplace_back(key, value);
}

KvConfig parse_kv_text(const std::string& text) {
  KvConfig cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": empty key");
    cfg.items.emplace_back(key, value);
  }
  return cfg;
}

KvConfig load_kv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_kv_text(ss.str());
}

std::vector<double> parse_snr_list(const std::string& spec) {
  std::vector<double> out;
  if (spec.find(':') != std::string::npos) {
    double start, step, stop;
    char c1, c2;
    std::istringstream in(spec);
    if (!(in >> start >> c1 >> step >> c2 >> stop) || c1 != ':' || c2 != ':')
      throw std::invalid_argument("bad SNR range '" + spec + "', want start:step:stop");
    if (step <= 0.0) throw std::invalid_argument("SNR range step must be positive");
    const long long n = static_cast<long long>(std::floor((stop - start) / step + 1e-9));
    for (long long i = 0; i <= n; ++i) out.push_back(start + i * step);
  } else {
    std::string item;
    std::istringstream in(spec);
    while (std::getline(in, item, ',')) {
      item = trim(item);
      if (item.empty()) continue;
      size_t used = 0;
      double v = std::stod(item, &used);
      if (used != item.size()) throw std::invalid_argument("bad SNR value '" + item + "'");
      out.push_back(v);
    }
  }
  if (out.empty()) throw std::invalid_argument("empty SNR list");
  return out;
}

SchemeSpec parse_scheme_token(const std::string& token) {
  std::string t = trim(token);
  if (t == "dnf_xor") return {Scheme::DnfXor, ""};
  if (t.rfind("dstc:", 0) == 0) {
    SchemeSpec s{Scheme::Dstc, t.substr(5)};
    if (s.design.empty()) throw std::invalid_argument("dstc scheme needs a design token");
    return s;
  }
  throw std::invalid_argument("unknown scheme '" + t + "' (want dnf_xor or dstc:<design>)");
}

std::vector<SchemeSpec> parse_scheme_list(const std::string& spec) {
  std::vector<SchemeSpec> out;
  std::string item;
  std::istringstream in(spec);
  while (std::getline(in, item, ';')) {
    item = trim(item);
    if (!item.empty()) out.push_back(parse_scheme_token(item));
  }
  if (out.empty()) throw std::invalid_argument("empty scheme list");
  return out;
}

RelayDecoder parse_decoder(const std::string& token) {
  if (token == "auto") return RelayDecoder::Auto;
  if (token == "brute") return RelayDecoder::Brute;
  if (token == "conditional") return RelayDecoder::Conditional;
  if (token == "qam_fast") return RelayDecoder::QamFast;
  throw std::invalid_argument("unknown decoder '" + token + "'");
}

FadingModel parse_fading(const std::string& kind, const std::string& k_db) {
  FadingModel m;
  if (kind == "rayleigh") {
    m.kind = Fading::Rayleigh;
  } else if (kind == "rician") {
    m.kind = Fading::Rician;
    if (k_db.empty()) throw std::invalid_argument("rician fading needs fading.k_factor_db");
    m.k_factor_db = std::stod(k_db);
  } else {
    throw std::invalid_argument("unknown fading kind '" + kind + "'");
  }
  return m;
}

void write_csv(const std::string& path, const std::vector<BerRecord>& rows) {
  std::ofstream out(path, std::ios::binary);  // LF line ends everywhere
  if (!out) throw std::runtime_error("cannot write " + path);
  out << kCsvHeader << "\n";
  for (const auto& r : rows) {
    out << csv_field(r.scheme) << ',' << csv_field(r.design) << ',' << csv_field(r.signal_set)
        << ',' << csv_field(r.fading) << ','
        << (r.has_k_factor ? fmt("%.10g", r.k_factor_db) : std::string()) << ','
        << fmt("%.10g", r.snr_db) << ',' << r.frames << ',' << r.bits << ',' << r.bit_errors
        << ',' << fmt("%.12g", r.ber) << ',' << fmt("%.12g", r.ci_low) << ','
        << fmt("%.12g", r.ci_high) << "\n";
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

int CsvTable::column(const std::string& name) const {
  for (size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return static_cast<int>(i);
  return -1;
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open CSV: " + path);
  CsvTable t;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = split_csv_line(line);
    if (first) {
      t.header = std::move(fields);
      first = false;
    } else {
      if (fields.size() != t.header.size())
        throw std::invalid_argument(path + ": row with " + std::to_string(fields.size()) +
                                    " fields, header has " + std::to_string(t.header.size()));
      t.rows.push_back(std::move(fields));
    }
  }
  if (first) throw std::invalid_argument(path + ": empty CSV");
  return t;
}

std::vector<BerRecord> records_from_csv(const CsvTable& t) {
  auto need = [&](const char* name) {
    int c = t.column(name);
    if (c < 0) throw std::invalid_argument(std::string("CSV missing column ") + name);
    return c;
  };
  const int c_scheme = need("scheme"), c_design = need("design"), c_set = need("signal_set");
  const int c_fading = need("fading"), c_k = need("k_factor_db"), c_snr = need("snr_db");
  const int c_frames = need("frames"), c_bits = need("bits"), c_err = need("bit_errors");
  const int c_ber = need("ber"), c_lo = need("ci_low"), c_hi = need("ci_high");
  std::vector<BerRecord> out;
  for (const auto& row : t.rows) {
    BerRecord r;
    r.scheme = row[c_scheme];
    r.design = row[c_design];
    r.signal_set = row[c_set];
    r.fading = row[c_fading];
    r.has_k_factor = !row[c_k].empty();
    if (r.has_k_factor) r.k_factor_db = std::stod(row[c_k]);
    r.snr_db = std::stod(row[c_snr]);
    r.frames = std::stoll(row[c_frames]);
    r.bits = std::stoll(row[c_bits]);
    r.bit_errors = std::stoll(row[c_err]);
    r.ber = std::stod(row[c_ber]);
    r.ci_low = std::stod(row[c_lo]);
    r.ci_high = std::stod(row[c_hi]);
    out.push_back(std::move(r));
  }
  return out;
}

std::string utc_now_string() {
  std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_manifest(const std::string& path, const KvConfig& resolved, uint64_t seed,
                    const std::string& started_utc, const std::string& finished_utc,
                    const std::vector<std::string>& outputs) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "tool_version = " << kToolVersion << "\n";
  out << "master_seed = " << seed << "\n";
  out << "started_utc = " << started_utc << "\n";
  out << "finished_utc = " << finished_utc << "\n";
  for (const auto& p : outputs) out << "output = " << p << "\n";
  out << "# resolved configuration\n";
  for (const auto& [k, v] : resolved.items) out << k << " = " << v << "\n";
  if (!out) throw std::runtime_error("write failed: " + path);
}

PlotdataResult write_plotdata(const std::vector<std::string>& csv_paths,
                              const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);

  // curve key -> (file name, rows as verbatim strings)
  std::vector<std::pair<std::string, std::string>> order;  // key, file
  std::map<std::string, std::vector<std::array<std::string, 2>>> data;
  std::map<std::string, std::array<std::string, 4>> meta;
  PlotdataResult res;

  for (const auto& path : csv_paths) {
    CsvTable t = read_csv(path);
    auto need = [&](const char* name) {
      int c = t.column(name);
      if (c < 0) throw std::invalid_argument(path + ": missing column " + name);
      return c;
    };
    const int c_scheme = need("scheme"), c_design = need("design");
    const int c_snr = need("snr_db"), c_ber = need("ber");
    const int c_set = t.column("signal_set"), c_fading = t.column("fading");
    for (const auto& row : t.rows) {
      std::string key = row[c_scheme] + "\x1f" + row[c_design];
      if (!data.count(key)) {
        std::string base = sanitize(row[c_design].empty()
                                        ? row[c_scheme]
                                        : row[c_scheme] + "_" + row[c_design]);
        std::string file = base + ".dat";
        for (int n = 2; std::any_of(order.begin(), order.end(),
                                    [&](auto& kf) { return kf.second == file; });
             ++n)
          file = base + "_" + std::to_string(n) + ".dat";
        order.emplace_back(key, file);
        meta[key] = {row[c_scheme], row[c_design], c_set >= 0 ? row[c_set] : "",
                     c_fading >= 0 ? row[c_fading] : ""};
      }
      if (std::stod(row[c_ber]) == 0.0) {
        ++res.zero_ber_rows;
        std::cerr << "warning: ber = 0 at snr_db = " << row[c_snr]
                  << " (log-scale plots will drop it)\n";
      }
      data[key].push_back({row[c_snr], row[c_ber]});
    }
  }

  for (const auto& [key, file] : order) {
    fs::path p = fs::path(out_dir) / file;
    std::ofstream out(p, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + p.string());
    out << "# snr_db ber\n";
    for (const auto& row : data[key]) out << row[0] << ' ' << row[1] << "\n";
    res.files.push_back(p.string());
  }

  fs::path idx = fs::path(out_dir) / "index.txt";
  std::ofstream out(idx, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + idx.string());
  out << "# file\tscheme\tdesign\tsignal_set\tfading\n";
  for (const auto& [key, file] : order) {
    const auto& m = meta[key];
    out << file << '\t' << m[0] << '\t' << m[1] << '\t' << m[2] << '\t' << m[3] << "\n";
  }
  res.index_path = idx.string();
  return res;
}

}  // namespace twrc
