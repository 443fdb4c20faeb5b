#include "twrc/signal_set.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace twrc {

namespace {

int gray(int k) { return k ^ (k >> 1); }

void attach_labels(SignalSet& s, const std::vector<int>& index_to_label) {
  int m = s.size();
  s.index_to_label = index_to_label;
  s.label_to_index.assign(m, -1);
  for (int idx = 0; idx < m; ++idx) {
    int lbl = index_to_label[idx];
    if (lbl < 0 || lbl >= m || s.label_to_index[lbl] != -1)
      throw std::logic_error("label map is not a bijection");
    s.label_to_index[lbl] = idx;
  }
}

}  // namespace

double SignalSet::min_distance() const {
  double best = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < points.size(); ++i)
    for (size_t k = i + 1; k < points.size(); ++k)
      best = std::min(best, std::abs(points[i] - points[k]));
  return best;
}

double SignalSet::avg_energy() const {
  double e = 0.0;
  for (auto& p : points) e += std::norm(p);
  return e / static_cast<double>(points.size());
}

SignalSet make_psk(int lambda) {
  if (lambda < 1 || lambda > 8) throw std::invalid_argument("psk: lambda must be in [1,8]");
  int m = 1 << lambda;
  SignalSet s;
  s.bits_per_symbol = lambda;
  s.kind = SetKind::PSK;
  s.name = "psk" + std::to_string(m);
  s.points.resize(m);
  if (lambda == 1) {
    s.points = {{1.0, 0.0}, {-1.0, 0.0}};
  } else if (lambda == 2) {
    // exact axis points
    s.points = {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
  } else {
    for (int k = 0; k < m; ++k)
      s.points[k] = std::polar(1.0, 2.0 * std::numbers::pi * k / m);
  }
  std::vector<int> idx2lbl(m);
  for (int k = 0; k < m; ++k) idx2lbl[k] = gray(k);
  attach_labels(s, idx2lbl);
  return s;
}

SignalSet make_square_qam(int lambda) {
  if (lambda < 2 || lambda > 8 || lambda % 2 != 0)
    throw std::invalid_argument("qam: lambda must be even and in [2,8]");
  int m = 1 << lambda;
  int levels = 1 << (lambda / 2);
  double energy = 2.0 * (m - 1) / 3.0;  // mean energy of the odd-integer grid
  double scale = 1.0 / std::sqrt(energy);
  SignalSet s;
  s.bits_per_symbol = lambda;
  s.kind = SetKind::SquareQAM;
  s.name = "qam" + std::to_string(m);
  s.points.resize(m);
  std::vector<int> idx2lbl(m);
  for (int i = 0; i < levels; ++i) {
    for (int q = 0; q < levels; ++q) {
      int idx = i * levels + q;
      double a = 2 * i - (levels - 1);
      double b = 2 * q - (levels - 1);
      s.points[idx] = {a * scale, b * scale};
      idx2lbl[idx] = (gray(i) << (lambda / 2)) | gray(q);  // per-axis Gray
    }
  }
  attach_labels(s, idx2lbl);
  return s;
}

SignalSet rotate(const SignalSet& s, double theta) {
  SignalSet r = s;
  std::complex<double> w = std::polar(1.0, theta);
  for (auto& p : r.points) p *= w;
  r.kind = SetKind::Custom;
  r.name = s.name + "@rot";
  return r;
}

SignalSet parse_signal_set(const std::string& token) {
  auto starts = [&](const char* p) { return token.rfind(p, 0) == 0; };
  auto size_of = [&](size_t off) -> int {
    if (off >= token.size()) throw std::invalid_argument("signal set: missing size in '" + token + "'");
    int m = 0;
    for (size_t i = off; i < token.size(); ++i) {
      if (!isdigit(static_cast<unsigned char>(token[i])))
        throw std::invalid_argument("signal set: bad token '" + token + "'");
      m = m * 10 + (token[i] - '0');
    }
    return m;
  };
  auto log2_exact = [](int m) -> int {
    int l = 0;
    while ((1 << l) < m) ++l;
    if ((1 << l) != m) throw std::invalid_argument("signal set size must be a power of two");
    return l;
  };
  if (starts("psk")) return make_psk(log2_exact(size_of(3)));
  if (starts("qam")) return make_square_qam(log2_exact(size_of(3)));
  throw std::invalid_argument("unknown signal set '" + token + "' (expected pskN or qamN)");
}

DifferenceSet difference_set(const SignalSet& s) {
  const double tol = 1e-12;
  std::vector<std::complex<double>> all;
  all.reserve(s.points.size() * s.points.size());
  for (auto& a : s.points)
    for (auto& b : s.points) all.push_back(a - b);
  std::sort(all.begin(), all.end(), [](auto& a, auto& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  DifferenceSet d;
  for (auto& v : all) {
    bool dup = false;
    // accepted list is sorted too; only a short tail can be within tol in re
    for (auto it = d.deltas.rbegin(); it != d.deltas.rend(); ++it) {
      if (v.real() - it->real() > tol) break;
      if (std::abs(v.imag() - it->imag()) <= tol) {
        dup = true;
        break;
      }
    }
    if (!dup) d.deltas.push_back(v);
  }
  return d;
}

double coordinate_product_distance(const SignalSet& s) {
  double best = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < s.points.size(); ++i)
    for (size_t k = 0; k < s.points.size(); ++k) {
      if (i == k) continue;
      auto d = s.points[i] - s.points[k];
      best = std::min(best, std::abs(d.real()) * std::abs(d.imag()));
    }
  return best;
}

}  // namespace twrc
