#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "doctest.h"
#include "twrc/io.hpp"

using namespace twrc;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  fs::path p = fs::temp_directory_path() / "twrc_io_tests" / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(bool(in));
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("kv config parsing") {
  auto cfg = parse_kv_text(
      "# leading comment\n"
      "\n"
      "scheme = dnf_xor   # trailing comment\n"
      "  snr_db = 16:2:38\n"
      "note = a = b\n"
      "scheme = dstc:construction1\n");
  CHECK(cfg.items.size() == 4);
  CHECK(cfg.has("scheme"));
  CHECK(!cfg.has("missing"));
  CHECK(cfg.get("scheme") == "dstc:construction1");  // later key wins
  CHECK(cfg.get("snr_db") == "16:2:38");
  CHECK(cfg.get("note") == "a = b");  // value may contain '='
  CHECK(cfg.get("missing", "dflt") == "dflt");

  cfg.set("scheme", "dnf_xor");
  CHECK(cfg.get("scheme") == "dnf_xor");
  CHECK(cfg.items.size() == 4);  // overrode in place
  cfg.set("fresh", "1");
  CHECK(cfg.items.back().first == "fresh");

  CHECK_THROWS_AS(parse_kv_text("just words\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_kv_text("ok = 1\nbroken line\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_kv_text("= orphan value\n"), std::invalid_argument);
  try {
    parse_kv_text("a = 1\nb = 2\nnope\n");
    FAIL("expected throw");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("3") != std::string::npos);  // names the line
  }
}

TEST_CASE("load_kv_file") {
  auto dir = fresh_dir("kv");
  {
    std::ofstream out(dir / "run.cfg");
    out << "signal_set = qam16\n";
  }
  auto cfg = load_kv_file((dir / "run.cfg").string());
  CHECK(cfg.get("signal_set") == "qam16");
  CHECK_THROWS_AS(load_kv_file((dir / "absent.cfg").string()), std::invalid_argument);
}

TEST_CASE("snr list parsing") {
  auto a = parse_snr_list("16,18,20");
  REQUIRE(a.size() == 3);
  CHECK(a[0] == 16.0);
  CHECK(a[2] == 20.0);

  auto b = parse_snr_list("16:2:38");
  REQUIRE(b.size() == 12);
  CHECK(b.front() == 16.0);
  CHECK(b.back() == 38.0);
  for (size_t i = 1; i < b.size(); ++i) CHECK(b[i] - b[i - 1] == doctest::Approx(2.0));

  auto c = parse_snr_list("10:3:11");  // stop not on the grid
  REQUIRE(c.size() == 1);
  CHECK(c[0] == 10.0);

  CHECK(parse_snr_list("-4, 0, 2.5").size() == 3);
  CHECK_THROWS_AS(parse_snr_list(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_snr_list("16:0:38"), std::invalid_argument);
  CHECK_THROWS_AS(parse_snr_list("16:-2:10"), std::invalid_argument);
  CHECK_THROWS_AS(parse_snr_list("16x,18"), std::invalid_argument);
  CHECK_THROWS_AS(parse_snr_list("1:2"), std::invalid_argument);
}

TEST_CASE("scheme token parsing") {
  auto s = parse_scheme_token("dnf_xor");
  CHECK(s.scheme == Scheme::DnfXor);
  CHECK(s.design.empty());

  auto d = parse_scheme_token(" dstc:construction1 ");
  CHECK(d.scheme == Scheme::Dstc);
  CHECK(d.design == "construction1");

  auto t = parse_scheme_token("dstc:transcendental:1,0,0,1");
  CHECK(t.design == "transcendental:1,0,0,1");  // commas survive

  CHECK_THROWS_AS(parse_scheme_token("dstc:"), std::invalid_argument);
  CHECK_THROWS_AS(parse_scheme_token("amplify_forward"), std::invalid_argument);

  auto list = parse_scheme_list("dnf_xor; dstc:construction1 ;dstc:construction2:0.7");
  REQUIRE(list.size() == 3);
  CHECK(list[0].scheme == Scheme::DnfXor);
  CHECK(list[1].design == "construction1");
  CHECK(list[2].design == "construction2:0.7");
  CHECK_THROWS_AS(parse_scheme_list(" ; ;"), std::invalid_argument);
}

TEST_CASE("decoder and fading parsing") {
  CHECK(parse_decoder("auto") == RelayDecoder::Auto);
  CHECK(parse_decoder("brute") == RelayDecoder::Brute);
  CHECK(parse_decoder("conditional") == RelayDecoder::Conditional);
  CHECK(parse_decoder("qam_fast") == RelayDecoder::QamFast);
  CHECK_THROWS_AS(parse_decoder("sphere"), std::invalid_argument);

  auto ray = parse_fading("rayleigh", "");
  CHECK(ray.kind == Fading::Rayleigh);
  auto ric = parse_fading("rician", "5");
  CHECK(ric.kind == Fading::Rician);
  CHECK(ric.k_factor_db == 5.0);
  CHECK_THROWS_AS(parse_fading("rician", ""), std::invalid_argument);
  CHECK_THROWS_AS(parse_fading("nakagami", "1"), std::invalid_argument);
}

TEST_CASE("csv round trip keeps every field") {
  auto dir = fresh_dir("csv");
  BerRecord a;
  a.scheme = "dnf_xor";
  a.signal_set = "psk4";
  a.fading = "rayleigh";
  a.snr_db = 26.0;
  a.frames = 65536;
  a.bits = 262144;
  a.bit_errors = 512;
  a.ber = 0.001953125;
  a.ci_low = 0.0009765625;
  a.ci_high = 0.00390625;

  BerRecord b = a;
  b.scheme = "dstc";
  b.design = "transcendental:1,0,0,1";  // forces quoting
  b.fading = "rician";
  b.has_k_factor = true;
  b.k_factor_db = 5.0;
  b.bits = 524288;
  b.bit_errors = 0;
  b.ber = b.ci_low = 0.0;
  b.ci_high = 0.25;

  auto path = (dir / "out.csv").string();
  write_csv(path, {a, b});

  std::string raw = slurp(path);
  CHECK(raw.find('\r') == std::string::npos);  // LF only
  CHECK(raw.rfind(std::string(kCsvHeader) + "\n", 0) == 0);
  CHECK(raw.find("\"transcendental:1,0,0,1\"") != std::string::npos);

  auto table = read_csv(path);
  CHECK(table.header.size() == 12);
  CHECK(table.column("ber") == 9);
  CHECK(table.column("nope") == -1);
  REQUIRE(table.rows.size() == 2);
  CHECK(table.rows[1][1] == "transcendental:1,0,0,1");
  CHECK(table.rows[0][4].empty());  // no k-factor for rayleigh

  auto back = records_from_csv(table);
  REQUIRE(back.size() == 2);
  CHECK(back[0].scheme == "dnf_xor");
  CHECK(back[0].design.empty());
  CHECK(!back[0].has_k_factor);
  CHECK(back[0].snr_db == 26.0);
  CHECK(back[0].frames == 65536);
  CHECK(back[0].bits == 262144);
  CHECK(back[0].bit_errors == 512);
  CHECK(back[0].ber == 0.001953125);  // dyadic: exact through %.12g
  CHECK(back[0].ci_low == 0.0009765625);
  CHECK(back[0].ci_high == 0.00390625);
  CHECK(back[1].design == "transcendental:1,0,0,1");
  CHECK(back[1].has_k_factor);
  CHECK(back[1].k_factor_db == 5.0);
  CHECK(back[1].ber == 0.0);
}

TEST_CASE("csv reader rejects malformed input") {
  auto dir = fresh_dir("badcsv");
  CHECK_THROWS_AS(read_csv((dir / "absent.csv").string()), std::invalid_argument);

  auto empty = dir / "empty.csv";
  std::ofstream(empty).close();
  CHECK_THROWS_AS(read_csv(empty.string()), std::invalid_argument);

  auto ragged = dir / "ragged.csv";
  {
    std::ofstream out(ragged);
    out << "a,b,c\n1,2\n";
  }
  CHECK_THROWS_AS(read_csv(ragged.string()), std::invalid_argument);

  auto crlf = dir / "crlf.csv";
  {
    std::ofstream out(crlf, std::ios::binary);
    out << "a,b\r\n1,2\r\n";
  }
  auto t = read_csv(crlf.string());  // tolerated on read
  REQUIRE(t.rows.size() == 1);
  CHECK(t.rows[0][1] == "2");
}

TEST_CASE("manifest layout") {
  auto dir = fresh_dir("manifest");
  KvConfig resolved;
  resolved.set("scheme", "dnf_xor");
  resolved.set("snr_db", "16:2:38");
  auto path = (dir / "manifest.txt").string();
  write_manifest(path, resolved, 424242, "2026-01-02T03:04:05Z", "2026-01-02T03:09:10Z",
                 {"r.csv", "plots/index.txt"});
  std::string text = slurp(path);
  CHECK(text.find(std::string("tool_version = ") + kToolVersion + "\n") != std::string::npos);
  CHECK(text.find("master_seed = 424242\n") != std::string::npos);
  CHECK(text.find("started_utc = 2026-01-02T03:04:05Z\n") != std::string::npos);
  CHECK(text.find("finished_utc = 2026-01-02T03:09:10Z\n") != std::string::npos);
  CHECK(text.find("output = r.csv\n") != std::string::npos);
  CHECK(text.find("output = plots/index.txt\n") != std::string::npos);
  CHECK(text.find("scheme = dnf_xor\n") != std::string::npos);
  CHECK(text.find("snr_db = 16:2:38\n") != std::string::npos);
}

TEST_CASE("utc timestamp shape") {
  auto s = utc_now_string();
  REQUIRE(s.size() == 20);
  CHECK(s[4] == '-');
  CHECK(s[7] == '-');
  CHECK(s[10] == 'T');
  CHECK(s[13] == ':');
  CHECK(s[16] == ':');
  CHECK(s.back() == 'Z');
  for (size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u, 11u, 12u, 14u, 15u, 17u, 18u})
    CHECK(std::isdigit(static_cast<unsigned char>(s[i])));
  CHECK(s.substr(0, 3) == "202");  // sane century
}

TEST_CASE("plotdata splits curves and copies values verbatim") {
  auto dir = fresh_dir("plotdata");
  auto csv = dir / "sweep.csv";
  {
    std::ofstream out(csv, std::ios::binary);
    out << "scheme,design,signal_set,fading,snr_db,ber\n"
        << "dnf_xor,,psk4,rayleigh,26,0.0015\n"
        << "dstc,construction1,psk4,rayleigh,26,0.00031\n"
        << "dnf_xor,,psk4,rayleigh,28,1e-05\n"
        << "dstc,construction1,psk4,rayleigh,28,0\n";
  }
  auto out_dir = (dir / "plots").string();
  auto res = write_plotdata({csv.string()}, out_dir);
  REQUIRE(res.files.size() == 2);
  CHECK(res.zero_ber_rows == 1);
  CHECK(fs::path(res.files[0]).filename() == "dnf_xor.dat");
  CHECK(fs::path(res.files[1]).filename() == "dstc_construction1.dat");

  std::string dnf = slurp(res.files[0]);
  CHECK(dnf == "# snr_db ber\n26 0.0015\n28 1e-05\n");  // strings, not re-printed doubles
  std::string dstc = slurp(res.files[1]);
  CHECK(dstc == "# snr_db ber\n26 0.00031\n28 0\n");

  std::string idx = slurp(res.index_path);
  CHECK(fs::path(res.index_path).filename() == "index.txt");
  CHECK(idx.find("dnf_xor.dat\tdnf_xor\t\tpsk4\trayleigh\n") != std::string::npos);
  CHECK(idx.find("dstc_construction1.dat\tdstc\tconstruction1\tpsk4\trayleigh\n") !=
        std::string::npos);
}

TEST_CASE("plotdata keeps distinct curves apart when names sanitize alike") {
  auto dir = fresh_dir("plotdata2");
  auto csv = dir / "sweep.csv";
  {
    std::ofstream out(csv, std::ios::binary);
    out << "scheme,design,snr_db,ber\n"
        << "dstc,\"a,b\",10,0.1\n"
        << "dstc,a;b,10,0.2\n";
  }
  auto res = write_plotdata({csv.string()}, (dir / "plots").string());
  REQUIRE(res.files.size() == 2);
  CHECK(fs::path(res.files[0]).filename() == "dstc_a_b.dat");
  CHECK(fs::path(res.files[1]).filename() == "dstc_a_b_2.dat");
  CHECK(slurp(res.files[0]) == "# snr_db ber\n10 0.1\n");
  CHECK(slurp(res.files[1]) == "# snr_db ber\n10 0.2\n");
}
