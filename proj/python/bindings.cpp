#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "twrc/dstc.hpp"
#include "twrc/fade_subspace.hpp"
#include "twrc/io.hpp"
#include "twrc/linear_design.hpp"
#include "twrc/protocol.hpp"
#include "twrc/relay_decoder.hpp"
#include "twrc/sim_engine.hpp"
#include "twrc/signal_set.hpp"

namespace py = pybind11;
using namespace twrc;
using cd = std::complex<double>;

namespace {

std::vector<std::vector<cd>> to_rows(const Eigen::MatrixXcd& m) {
  std::vector<std::vector<cd>> out(m.rows());
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) out[r].push_back(m(r, c));
  return out;
}

std::vector<std::vector<double>> to_rows(const Eigen::MatrixXd& m) {
  std::vector<std::vector<double>> out(m.rows());
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) out[r].push_back(m(r, c));
  return out;
}

py::dict subspace_dict(const FadeSubspace& f) {
  py::dict d;
  d["dim"] = f.dim;
  d["ratio"] = f.canonical_ratio ? py::cast(*f.canonical_ratio) : py::none();
  d["at_infinity"] = f.ratio_at_infinity;
  d["basis"] = to_rows(f.basis);
  return d;
}

LinearDesign resolve_design(const std::string& name) {
  if (is_dstc_token(name)) return dstc_as_linear_design(parse_dstc(name));
  return named_design(name);
}

py::dict record_dict(const BerRecord& r) {
  py::dict d;
  d["scheme"] = r.scheme;
  d["design"] = r.design;
  d["signal_set"] = r.signal_set;
  d["fading"] = r.fading;
  d["k_factor_db"] = r.has_k_factor ? py::cast(r.k_factor_db) : py::none();
  d["snr_db"] = r.snr_db;
  d["frames"] = r.frames;
  d["bits"] = r.bits;
  d["bit_errors"] = r.bit_errors;
  d["ber"] = r.ber;
  d["ci_low"] = r.ci_low;
  d["ci_high"] = r.ci_high;
  return d;
}

SimConfig config_from_dict(const py::dict& cfg) {
  SimConfig c;
  auto gets = [&](const char* k, const std::string& fb) {
    return cfg.contains(k) ? cfg[k].cast<std::string>() : fb;
  };
  const std::string scheme = gets("scheme", "dnf_xor");
  if (scheme == "dstc")
    c.scheme = Scheme::Dstc;
  else if (scheme == "dnf_xor")
    c.scheme = Scheme::DnfXor;
  else
    throw std::invalid_argument("scheme must be dnf_xor or dstc");
  c.design_name = gets("design", "");
  c.signal_set = gets("signal_set", "psk4");
  c.fading = parse_fading(gets("fading", "rayleigh"),
                          cfg.contains("k_factor_db")
                              ? std::to_string(cfg["k_factor_db"].cast<double>())
                              : "");
  if (!cfg.contains("snr_db")) throw std::invalid_argument("config needs snr_db list");
  c.snr_db_list = cfg["snr_db"].cast<std::vector<double>>();
  if (cfg.contains("max_frames")) c.max_frames = cfg["max_frames"].cast<long long>();
  if (cfg.contains("min_bit_errors")) c.min_bit_errors = cfg["min_bit_errors"].cast<long long>();
  if (cfg.contains("seed")) c.master_seed = cfg["seed"].cast<uint64_t>();
  if (cfg.contains("workers")) c.workers = cfg["workers"].cast<int>();
  c.decoder = parse_decoder(gets("decoder", "auto"));
  return c;
}

}  // namespace

PYBIND11_MODULE(_twrc, m) {
  m.doc() = "two-way relay space-time coding: analysis and simulation core";

  m.def("version", [] { return std::string(kToolVersion); });

  py::class_<SignalSet>(m, "SignalSet")
      .def_readonly("points", &SignalSet::points)
      .def_readonly("bits_per_symbol", &SignalSet::bits_per_symbol)
      .def_readonly("index_to_label", &SignalSet::index_to_label)
      .def_readonly("name", &SignalSet::name)
      .def_property_readonly("kind",
                             [](const SignalSet& s) {
                               switch (s.kind) {
                                 case SetKind::PSK: return "psk";
                                 case SetKind::SquareQAM: return "qam";
                                 default: return "custom";
                               }
                             })
      .def("size", &SignalSet::size)
      .def("min_distance", &SignalSet::min_distance)
      .def("avg_energy", &SignalSet::avg_energy)
      .def("__repr__", [](const SignalSet& s) { return "<SignalSet " + s.name + ">"; });

  m.def("make_psk", &make_psk, py::arg("bits"));
  m.def("make_square_qam", &make_square_qam, py::arg("bits"));
  m.def("parse_signal_set", &parse_signal_set, py::arg("token"));

  m.def(
      "spatial_mux_subspaces",
      [](const std::string& set_token) {
        SignalSet s = parse_signal_set(set_token);
        auto subs = enumerate_spatial_mux_subspaces(s);
        py::list out;
        for (const auto& f : subs) out.append(subspace_dict(f));
        return out;
      },
      py::arg("signal_set"),
      "singular fade subspaces of the two-user multiple access superposition");

  m.def(
      "rank_spectrum",
      [](const std::string& design, const std::string& set_token, long long budget) {
        SignalSet s = parse_signal_set(set_token);
        RankSpectrum spec = rank_spectrum(resolve_design(design), s, 1e-9, budget);
        py::dict d;
        d["design"] = design;
        d["min_rank"] = spec.min_rank;
        d["total"] = spec.total;
        py::dict counts;
        for (const auto& [rank, count] : spec.counts) counts[py::int_(rank)] = count;
        d["counts"] = counts;
        py::list subs;
        for (const auto& f : spec.subspaces) subs.append(subspace_dict(f));
        d["subspaces"] = subs;
        return d;
      },
      py::arg("design"), py::arg("signal_set"), py::arg("budget") = 20'000'000LL);

  m.def(
      "singularity_minimal",
      [](const std::string& token, const std::string& set_token) {
        SingularityResult r = is_singularity_minimal(parse_dstc(token), parse_signal_set(set_token));
        py::dict d;
        d["minimal"] = r.minimal;
        if (r.witness) {
          py::dict w;
          w["dx_a"] = std::vector<cd>{r.witness->dx_a(0), r.witness->dx_a(1)};
          w["dx_b"] = std::vector<cd>{r.witness->dx_b(0), r.witness->dx_b(1)};
          w["det"] = r.witness->det;
          d["witness"] = w;
        } else {
          d["witness"] = py::none();
        }
        return d;
      },
      py::arg("design"), py::arg("signal_set"));

  m.def(
      "coding_gain",
      [](const std::string& token, const std::string& set_token) {
        return coding_gain(parse_dstc(token), parse_signal_set(set_token));
      },
      py::arg("design"), py::arg("signal_set"));

  m.def(
      "generators",
      [](const std::string& token) {
        DstcDesign d = parse_dstc(token);
        py::dict out;
        out["m_a"] = to_rows(Eigen::MatrixXcd(d.m_a));
        out["m_b"] = to_rows(Eigen::MatrixXcd(d.m_b));
        return out;
      },
      py::arg("design"));

  m.def(
      "build_h_eq",
      [](const std::string& token, cd h_a, cd h_b) {
        EquivalentChannel ec = build_h_eq(parse_dstc(token), h_a, h_b);
        py::dict d;
        d["h_eq"] = to_rows(Eigen::MatrixXd(ec.h_eq));
        d["q"] = to_rows(Eigen::MatrixXd(ec.q));
        d["r"] = to_rows(Eigen::MatrixXd(ec.r));
        d["r1_diagonal"] = ec.r1_diagonal;
        d["r1_offdiag_max"] = ec.r1_offdiag_max;
        return d;
      },
      py::arg("design"), py::arg("h_a"), py::arg("h_b"));

  m.def(
      "relay_decode",
      [](const std::string& token, const std::string& set_token, cd h_a, cd h_b, cd y1, cd y2,
         const std::string& method) {
        SignalSet s = parse_signal_set(set_token);
        EquivalentChannel ec = build_h_eq(parse_dstc(token), h_a, h_b);
        Eigen::Vector4d y = stack_observation(y1, y2);
        RelayDecision dec;
        if (method == "brute")
          dec = ml_bruteforce(ec, y, s);
        else if (method == "conditional")
          dec = ml_conditional(ec, y, s);
        else if (method == "qam_fast")
          dec = ml_conditional_qam(ec, y, s);
        else if (method == "auto")
          dec = ec.r1_diagonal ? (s.kind == SetKind::SquareQAM ? ml_conditional_qam(ec, y, s)
                                                               : ml_conditional(ec, y, s))
                               : ml_bruteforce(ec, y, s);
        else
          throw std::invalid_argument("method must be auto, brute, conditional or qam_fast");
        py::dict d;
        d["idx"] = std::vector<int>(dec.idx.begin(), dec.idx.end());
        d["labels"] = std::vector<int>(dec.labels.begin(), dec.labels.end());
        d["metric"] = dec.metric;
        d["metric_evals"] = dec.metric_evals;
        d["used_fallback"] = dec.used_fallback;
        return d;
      },
      py::arg("design"), py::arg("signal_set"), py::arg("h_a"), py::arg("h_b"), py::arg("y1"),
      py::arg("y2"), py::arg("method") = "auto");

  m.def(
      "exclusive_law_ok",
      [](const std::string& set_token) {
        SignalSet s = parse_signal_set(set_token);
        return check_exclusive_law(xor_map(s), s);
      },
      py::arg("signal_set"), "whether the XOR relay map obeys the exclusive law");

  m.def(
      "deep_fade",
      [](const std::vector<cd>& h, const std::string& set_token, double tol) {
        SignalSet s = parse_signal_set(set_token);
        Eigen::VectorXcd hv(h.size());
        for (size_t i = 0; i < h.size(); ++i) hv(static_cast<int>(i)) = h[i];
        DeepFadeResult r = is_deep_fade(hv, enumerate_spatial_mux_subspaces(s), tol);
        py::dict d;
        d["deep"] = r.deep;
        d["min_distance"] = r.min_distance;
        return d;
      },
      py::arg("h"), py::arg("signal_set"), py::arg("tol") = 1e-9);

  m.def(
      "run_sweep",
      [](const py::dict& cfg) {
        SimConfig c = config_from_dict(cfg);
        std::vector<BerRecord> rows;
        {
          py::gil_scoped_release release;
          rows = run_sweep(c);
        }
        py::list out;
        for (const auto& r : rows) out.append(record_dict(r));
        return out;
      },
      py::arg("config"),
      "Monte Carlo BER sweep; config keys: scheme, design, signal_set, fading, "
      "k_factor_db, snr_db, max_frames, min_bit_errors, seed, workers, decoder");

  m.def("estimate_diversity_slope", [](const py::list& records) {
    std::vector<BerRecord> rows;
    for (auto item : records) {
      py::dict d = item.cast<py::dict>();
      BerRecord r;
      r.snr_db = d["snr_db"].cast<double>();
      r.ber = d["ber"].cast<double>();
      rows.push_back(r);
    }
    return estimate_diversity_slope(rows);
  });
}
