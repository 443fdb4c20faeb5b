#include "twrc/dstc.hpp"

#include <cctype>
#include <cmath>
#include <iostream>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace twrc {

namespace {

using cd = std::complex<double>;
constexpr cd J{0.0, 1.0};

cd parse_complex(const std::string& tok) {
  // forms: "1", "-2.5", "j", "-j", "1+j", "0.5-0.5j", "2j"
  std::string t;
  for (char c : tok)
    if (!isspace(static_cast<unsigned char>(c))) t += c;
  if (t.empty()) throw std::invalid_argument("empty complex literal");
  // split at the sign that starts the imaginary part, if any
  size_t split = std::string::npos;
  for (size_t i = 1; i < t.size(); ++i) {
    if ((t[i] == '+' || t[i] == '-') && t[i - 1] != 'e' && t[i - 1] != 'E') split = i;
  }
  auto parse_part = [](std::string p, bool imag_unit_ok) -> double {
    if (imag_unit_ok) {
      if (p == "j" || p == "+j") return 1.0;
      if (p == "-j") return -1.0;
      if (!p.empty() && p.back() == 'j') p.pop_back();
    }
    size_t used = 0;
    double v = std::stod(p, &used);
    if (used != p.size()) throw std::invalid_argument("bad complex literal part '" + p + "'");
    return v;
  };
  bool has_j = t.back() == 'j';
  if (split == std::string::npos) {
    if (has_j) return {0.0, parse_part(t, true)};
    return {parse_part(t, false), 0.0};
  }
  if (!has_j) throw std::invalid_argument("bad complex literal '" + tok + "'");
  return {parse_part(t.substr(0, split), false), parse_part(t.substr(split), true)};
}

}  // namespace

Eigen::Matrix2cd dstc_codeword(const DstcDesign& d, const Eigen::RowVector2cd& x_a,
                               const Eigen::RowVector2cd& x_b) {
  Eigen::Matrix2cd c;
  c.row(0) = x_a * d.m_a;
  c.row(1) = x_b * d.m_b;
  return c;
}

DstcDesign identity_design() {
  DstcDesign d;
  d.m_a = Eigen::Matrix2cd::Identity();
  d.m_b = Eigen::Matrix2cd::Identity();
  d.name = "identity";
  return d;
}

DstcDesign construction_1() {
  const double r5 = std::sqrt(5.0);
  const double phi = (1.0 + r5) / 2.0;
  const double phib = (1.0 - r5) / 2.0;
  const cd alpha = cd(1.0, 1.0 - phi);   // 1 + j - j*phi
  const cd alphab = cd(1.0, 1.0 - phib); // 1 + j - j*phib
  DstcDesign d;
  d.m_a << alpha, alphab, alpha * phi, alphab * phib;
  d.m_a /= r5;
  d.m_b << J * alpha, alphab, J * alpha * phi, alphab * phib;
  d.m_b /= r5;
  d.name = "construction1";
  return d;
}

DstcDesign construction_2(double theta) {
  if (theta <= 0.0 || theta >= 2.0 * std::numbers::pi)
    throw std::invalid_argument("construction2: theta must be in (0, 2pi)");
  const double sin_g = std::sqrt(5.0 / 6.0);  // phi_g = atan(sqrt 5)
  const double cos_g = std::sqrt(1.0 / 6.0);
  const cd w = std::polar(1.0, theta);
  DstcDesign d;
  d.m_a = Eigen::Matrix2cd::Identity();
  d.m_b << cos_g, -sin_g * w, sin_g, cos_g * w;
  d.name = "construction2";
  return d;
}

DstcDesign transcendental_design(cd a, cd b, cd c, cd dd) {
  const cd det = a * dd - b * c;
  if (std::abs(det) < 1e-12 * std::max(1.0, std::abs(a * dd) + std::abs(b * c)))
    throw std::invalid_argument("transcendental design: [[a,b],[c,d]] must be full rank");
  const cd ej = std::polar(1.0, 1.0);  // e^{j * 1 radian}
  auto node = [&](cd u, cd v) {
    Eigen::Matrix2cd m;
    m << u, v, ej * u, ej * v;
    // trace(M M^H) = 2 (|u|^2 + |v|^2); scale it to exactly 2
    m /= std::sqrt(std::norm(u) + std::norm(v));
    return m;
  };
  DstcDesign d;
  d.m_a = node(a, b);
  d.m_b = node(c, dd);
  d.name = "transcendental";
  return d;
}

SingularityResult is_singularity_minimal(const DstcDesign& d, const SignalSet& s, double rel_tol,
                                         long long budget) {
  auto deltas = difference_set(s).deltas;
  const long long n = static_cast<long long>(deltas.size());
  const long long per_node = n * n - 1;  // nonzero difference vectors per node
  if (per_node > budget / per_node)
    throw std::runtime_error("is_singularity_minimal: enumeration budget exceeded");

  // precompute each node's difference rows dx * M
  std::vector<Eigen::RowVector2cd> rows_a, rows_b;
  std::vector<Eigen::RowVector2cd> dxs;
  rows_a.reserve(per_node);
  rows_b.reserve(per_node);
  dxs.reserve(per_node);
  for (long long i = 0; i < n; ++i) {
    for (long long k = 0; k < n; ++k) {
      if (std::abs(deltas[i]) < 1e-12 && std::abs(deltas[k]) < 1e-12) continue;
      Eigen::RowVector2cd dx(deltas[i], deltas[k]);
      dxs.push_back(dx);
      rows_a.push_back(dx * d.m_a);
      rows_b.push_back(dx * d.m_b);
    }
  }

  SingularityResult res;
  res.minimal = true;
  for (size_t i = 0; i < rows_a.size(); ++i) {
    const auto& ra = rows_a[i];
    const double na = ra.squaredNorm();
    for (size_t k = 0; k < rows_b.size(); ++k) {
      const auto& rb = rows_b[k];
      const cd det = ra(0) * rb(1) - ra(1) * rb(0);
      const double scale = std::max(1.0, na + rb.squaredNorm());  // ||C||_F^2
      if (std::abs(det) <= rel_tol * scale) {
        res.minimal = false;
        res.witness = SingularityWitness{dxs[i], dxs[k], det};
        return res;
      }
    }
  }
  return res;
}

double coding_gain(const DstcDesign& d, const SignalSet& s) {
  try {
    if (!is_singularity_minimal(d, s).minimal)
      std::cerr << "warning: coding gain requested for a design that is not"
                   " singularity minimal over "
                << s.name << "\n";
  } catch (const std::runtime_error&) {
    std::cerr << "warning: singularity minimality not verified for " << d.name << " over "
              << s.name << " (enumeration too large)\n";
  }
  auto deltas = difference_set(s).deltas;
  double best = std::numeric_limits<double>::infinity();
  for (auto& d1 : deltas) {
    for (auto& d2 : deltas) {
      if (std::abs(d1) < 1e-12 && std::abs(d2) < 1e-12) continue;
      Eigen::RowVector2cd dx(d1, d2);
      best = std::min(best, (dx * d.m_a).norm());
      best = std::min(best, (dx * d.m_b).norm());
    }
  }
  return best;
}

LinearDesign dstc_as_linear_design(const DstcDesign& d) {
  LinearDesign ld;
  ld.n_t = 2;
  ld.T = 2;
  ld.K = 4;  // x_A1, x_A2, x_B1, x_B2
  ld.name = d.name;
  auto row_weight = [](const Eigen::RowVector2cd& row, int which_row, cd unit) {
    Eigen::MatrixXcd w = Eigen::MatrixXcd::Zero(2, 2);
    w.row(which_row) = unit * row;
    return w;
  };
  for (int i = 0; i < 2; ++i) {
    ld.weights.push_back(row_weight(d.m_a.row(i), 0, cd(1, 0)));
    ld.weights.push_back(row_weight(d.m_a.row(i), 0, J));
  }
  for (int i = 0; i < 2; ++i) {
    ld.weights.push_back(row_weight(d.m_b.row(i), 1, cd(1, 0)));
    ld.weights.push_back(row_weight(d.m_b.row(i), 1, J));
  }
  return ld;
}

bool is_dstc_token(const std::string& token) {
  return token == "identity" || token == "construction1" || token.rfind("construction2", 0) == 0 ||
         token.rfind("transcendental", 0) == 0;
}

DstcDesign parse_dstc(const std::string& token) {
  if (token == "identity") return identity_design();
  if (token == "construction1") return construction_1();
  if (token.rfind("construction2", 0) == 0) {
    double theta = std::numbers::pi / 4.0;
    auto pos = token.find(':');
    if (pos != std::string::npos) {
      std::string arg = token.substr(pos + 1);
      if (arg.rfind("theta=", 0) != 0)
        throw std::invalid_argument("construction2 expects ':theta=<radians>'");
      theta = std::stod(arg.substr(6));
    } else if (token != "construction2") {
      throw std::invalid_argument("unknown design '" + token + "'");
    }
    auto d = construction_2(theta);
    d.name = token;
    return d;
  }
  if (token.rfind("transcendental", 0) == 0) {
    cd a(1, 0), b(0, 0), c(0, 0), dd(1, 0);
    auto pos = token.find(':');
    if (pos != std::string::npos) {
      std::string rest = token.substr(pos + 1);
      std::vector<std::string> parts;
      size_t start = 0;
      while (true) {
        auto comma = rest.find(',', start);
        parts.push_back(rest.substr(start, comma - start));
        if (comma == std::string::npos) break;
        start = comma + 1;
      }
      if (parts.size() != 4)
        throw std::invalid_argument("transcendental expects ':a,b,c,d'");
      a = parse_complex(parts[0]);
      b = parse_complex(parts[1]);
      c = parse_complex(parts[2]);
      dd = parse_complex(parts[3]);
    } else if (token != "transcendental") {
      throw std::invalid_argument("unknown design '" + token + "'");
    }
    auto d = transcendental_design(a, b, c, dd);
    d.name = token;
    return d;
  }
  throw std::invalid_argument("unknown DSTC '" + token + "'");
}

}  // namespace twrc
