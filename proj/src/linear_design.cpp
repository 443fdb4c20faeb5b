#include "twrc/linear_design.hpp"

#include <functional>
#include <stdexcept>

namespace twrc {

namespace {

using cd = std::complex<double>;
constexpr cd J{0.0, 1.0};

using Formula = std::function<Eigen::MatrixXcd(const std::vector<cd>&)>;

// Extract the 2K weight matrices by evaluating the codeword formula at
// unit real coordinates. Keeps the displayed codeword forms as the
// single source of truth.
LinearDesign from_formula(int n_t, int T, int K, const Formula& f, const std::string& name) {
  LinearDesign d;
  d.n_t = n_t;
  d.T = T;
  d.K = K;
  d.name = name;
  d.weights.reserve(2 * K);
  std::vector<cd> x(K, cd(0, 0));
  for (int k = 0; k < K; ++k) {
    x.assign(K, cd(0, 0));
    x[k] = cd(1, 0);
    d.weights.push_back(f(x));
    x[k] = J;
    d.weights.push_back(f(x));
  }
  return d;
}

Eigen::MatrixXcd alamouti_formula(const std::vector<cd>& x) {
  Eigen::MatrixXcd c(2, 2);
  c << x[0], x[1], -std::conj(x[1]), std::conj(x[0]);
  return c;
}

// 4x4 complex orthogonal design built iteratively from the 2x2 one
Eigen::MatrixXcd g4_formula(const std::vector<cd>& x) {
  Eigen::MatrixXcd g2 = alamouti_formula({x[0], x[1]});
  Eigen::MatrixXcd c(4, 4);
  c.topLeftCorner(2, 2) = g2;
  c.topRightCorner(2, 2) = x[2] * Eigen::MatrixXcd::Identity(2, 2);
  c.bottomLeftCorner(2, 2) = -std::conj(x[2]) * Eigen::MatrixXcd::Identity(2, 2);
  c.bottomRightCorner(2, 2) = g2.adjoint();
  return c;
}

Eigen::MatrixXcd qod4_formula(const std::vector<cd>& x) {
  auto cj = [](cd v) { return std::conj(v); };
  Eigen::MatrixXcd c(4, 4);
  c << x[0], -cj(x[1]), -cj(x[2]), x[3],
       x[1],  cj(x[0]), -cj(x[3]), -x[2],
       x[2], -cj(x[3]),  cj(x[0]), -x[1],
       x[3],  cj(x[2]),  cj(x[1]),  x[0];
  return c;
}

Eigen::MatrixXcd ciod2_formula(const std::vector<cd>& x) {
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(2, 2);
  c(0, 0) = cd(x[0].real(), x[1].imag());
  c(1, 1) = cd(x[1].real(), x[0].imag());
  return c;
}

// Coordinate-interleaved pairing for four symbols: y_i = x_i^R + j x_{(i+2) mod 4}^I,
// with the two interleaved pairs carried by 2x2 orthogonal blocks.
Eigen::MatrixXcd ciod4_formula(const std::vector<cd>& x) {
  cd y1(x[0].real(), x[2].imag());
  cd y2(x[1].real(), x[3].imag());
  cd y3(x[2].real(), x[0].imag());
  cd y4(x[3].real(), x[1].imag());
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(4, 4);
  c.topLeftCorner(2, 2) = alamouti_formula({y1, y2});
  c.bottomRightCorner(2, 2) = alamouti_formula({y3, y4});
  return c;
}

Eigen::MatrixXcd spatial_mux_formula(const std::vector<cd>& x) {
  Eigen::MatrixXcd c(2, 1);
  c << x[0], x[1];
  return c;
}

}  // namespace

Eigen::MatrixXcd LinearDesign::codeword(const std::vector<cd>& x) const {
  if (static_cast<int>(x.size()) != K) throw std::invalid_argument("codeword: wrong symbol count");
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(n_t, T);
  for (int k = 0; k < K; ++k)
    c += weights[2 * k] * x[k].real() + weights[2 * k + 1] * x[k].imag();
  return c;
}

LinearDesign named_design(const std::string& name) {
  if (name == "alamouti" || name == "g2")
    return from_formula(2, 2, 2, alamouti_formula, name);
  if (name == "g4") return from_formula(4, 4, 3, g4_formula, name);
  if (name == "qod4") return from_formula(4, 4, 4, qod4_formula, name);
  if (name == "ciod2" || name == "gciod_a1")
    return from_formula(2, 2, 2, ciod2_formula, name);
  if (name == "ciod4" || name == "gciod_a2")
    return from_formula(4, 4, 4, ciod4_formula, name);
  if (name == "spatial_mux" || name == "spatial-mux" || name == "spatialmux")
    return from_formula(2, 1, 2, spatial_mux_formula, "spatial_mux");
  throw std::invalid_argument("unknown design '" + name + "'");
}

std::vector<std::pair<std::string, std::string>> design_catalogue() {
  return {
      {"spatial_mux", "2x1 uncoded superposition, one slot"},
      {"alamouti", "2x2 orthogonal design (alias g2)"},
      {"g4", "4x4 generalized complex orthogonal design, 3 symbols"},
      {"qod4", "4x4 quasi-orthogonal design"},
      {"ciod2", "2x2 coordinate interleaved orthogonal design (alias gciod_a1)"},
      {"ciod4", "4x4 coordinate interleaved orthogonal design (alias gciod_a2)"},
  };
}

RankSpectrum rank_spectrum(const LinearDesign& d, const SignalSet& s, double rank_tol,
                           long long budget) {
  auto deltas = difference_set(s).deltas;
  const long long n = static_cast<long long>(deltas.size());
  long long combos = 1;
  for (int k = 0; k < d.K; ++k) {
    if (combos > budget / n) throw std::runtime_error("rank_spectrum: enumeration budget exceeded");
    combos *= n;
  }
  long long zero_idx = -1;
  for (long long i = 0; i < n; ++i) {
    if (std::abs(deltas[i]) < 1e-12) {
      zero_idx = i;
      break;
    }
  }

  RankSpectrum rs;
  rs.total = combos - 1;
  std::vector<FadeSubspace> raw;
  std::vector<int> digit(d.K, 0);
  std::vector<cd> dx(d.K);
  for (long long it = 0; it < combos; ++it) {
    bool all_zero = zero_idx >= 0;
    for (int k = 0; all_zero && k < d.K; ++k) all_zero = digit[k] == zero_idx;
    if (!all_zero) {
      for (int k = 0; k < d.K; ++k) dx[k] = deltas[digit[k]];
      FadeSubspace fs = orth_complement(d.codeword(dx), rank_tol);
      int rank = d.n_t - fs.dim;
      rs.counts[rank]++;
      if (rank < d.n_t) raw.push_back(std::move(fs));
    }
    if (it + 1 < combos) {  // odometer step
      int pos = 0;
      while (true) {
        if (++digit[pos] < n) break;
        digit[pos] = 0;
        ++pos;
      }
    }
  }
  rs.subspaces = dedup_subspaces(std::move(raw));
  rs.min_rank = rs.counts.empty() ? d.n_t : rs.counts.begin()->first;
  return rs;
}

}  // namespace twrc
