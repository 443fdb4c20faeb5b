#include "twrc/fade_subspace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace twrc {

namespace {

void fill_canonical_ratio(FadeSubspace& fs) {
  fs.canonical_ratio.reset();
  fs.ratio_at_infinity = false;
  if (fs.n_t != 2 || fs.dim != 1) return;
  Eigen::Vector2cd v = fs.basis.col(0);
  if (std::abs(v(0)) > 1e-9 * v.norm()) {
    std::complex<double> g = v(1) / v(0);
    // scrub numeric dust so exact inputs give exact ratios
    const double ref = std::max(1.0, std::abs(g));
    double re = std::abs(g.real()) <= 1e-12 * ref ? 0.0 : g.real();
    double im = std::abs(g.imag()) <= 1e-12 * ref ? 0.0 : g.imag();
    fs.canonical_ratio = std::complex<double>(re, im);
  } else {
    fs.ratio_at_infinity = true;
  }
}

FadeSubspace from_span_vector(const Eigen::Vector2cd& v) {
  FadeSubspace fs;
  fs.n_t = 2;
  fs.dim = 1;
  fs.basis = v / v.norm();
  fill_canonical_ratio(fs);
  return fs;
}

// quantize to 1e-8 buckets so the comparator is an exact strict weak
// ordering that still ignores numeric dust
long long quant(double x) {
  double v = x * 1e8;
  if (v > 9e17) v = 9e17;
  if (v < -9e17) v = -9e17;
  return std::llround(v);
}

// deterministic ordering: dimension, canonical ratio (finite first by
// (re, im), then the infinity point), else quantized projector entries
bool subspace_less(const FadeSubspace& a, const FadeSubspace& b) {
  if (a.dim != b.dim) return a.dim < b.dim;
  bool a_c = a.canonical_ratio.has_value() || a.ratio_at_infinity;
  bool b_c = b.canonical_ratio.has_value() || b.ratio_at_infinity;
  if (a_c && b_c) {
    if (a.ratio_at_infinity != b.ratio_at_infinity) return b.ratio_at_infinity;
    if (a.ratio_at_infinity) return false;
    auto ra = *a.canonical_ratio, rb = *b.canonical_ratio;
    if (quant(ra.real()) != quant(rb.real())) return quant(ra.real()) < quant(rb.real());
    return quant(ra.imag()) < quant(rb.imag());
  }
  if (a_c != b_c) return a_c;  // canonically described subspaces first
  Eigen::MatrixXcd pa = a.projector(), pb = b.projector();
  for (int i = 0; i < pa.rows(); ++i)
    for (int k = 0; k < pa.cols(); ++k) {
      if (quant(pa(i, k).real()) != quant(pb(i, k).real()))
        return quant(pa(i, k).real()) < quant(pb(i, k).real());
      if (quant(pa(i, k).imag()) != quant(pb(i, k).imag()))
        return quant(pa(i, k).imag()) < quant(pb(i, k).imag());
    }
  return false;
}

}  // namespace

FadeSubspace orth_complement(const Eigen::MatrixXcd& c, double rank_tol) {
  const int n_t = static_cast<int>(c.rows());
  Eigen::MatrixXcd ct = c.transpose();  // u^T C = 0  <=>  C^T u = 0
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(ct, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  double smax = sv.size() > 0 ? sv(0) : 0.0;
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > rank_tol * smax) ++rank;
  if (smax == 0.0) rank = 0;
  FadeSubspace fs;
  fs.n_t = n_t;
  fs.dim = n_t - rank;
  fs.basis = svd.matrixV().rightCols(fs.dim);
  fill_canonical_ratio(fs);
  return fs;
}

int difference_rank(const Eigen::MatrixXcd& c, double rank_tol) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(c);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > rank_tol * sv(0)) ++rank;
  return rank;
}

std::vector<FadeSubspace> dedup_subspaces(std::vector<FadeSubspace> subs, double tol) {
  std::vector<FadeSubspace> out;
  std::vector<Eigen::MatrixXcd> projs;
  for (auto& fs : subs) {
    Eigen::MatrixXcd p = fs.projector();
    bool dup = false;
    for (size_t i = 0; i < out.size(); ++i) {
      if (out[i].dim != fs.dim) continue;
      if ((projs[i] - p).norm() < tol) {
        dup = true;
        break;
      }
    }
    if (!dup) {
      out.push_back(fs);
      projs.push_back(std::move(p));
    }
  }
  std::sort(out.begin(), out.end(), subspace_less);
  return out;
}

std::vector<FadeSubspace> enumerate_spatial_mux_subspaces(const SignalSet& s, int n_t) {
  if (n_t != 2) throw std::invalid_argument("spatial mux subspaces: only n_t = 2 supported");
  auto deltas = difference_set(s).deltas;
  std::vector<FadeSubspace> subs;
  for (auto& da : deltas) {
    for (auto& db : deltas) {
      if (std::abs(da) < 1e-12 && std::abs(db) < 1e-12) continue;
      // u^T [da, db] = 0 has the solution u = [db, -da]
      subs.push_back(from_span_vector({db, -da}));
    }
  }
  return dedup_subspaces(std::move(subs));
}

DeepFadeResult is_deep_fade(const Eigen::VectorXcd& h, const std::vector<FadeSubspace>& subs,
                            double tol) {
  double hn = h.norm();
  if (hn == 0.0) throw std::invalid_argument("is_deep_fade: zero channel vector");
  DeepFadeResult r;
  r.min_distance = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < subs.size(); ++i) {
    if (subs[i].dim == 0) continue;
    Eigen::VectorXcd res = h - subs[i].basis * (subs[i].basis.adjoint() * h);
    double d = res.norm() / hn;
    if (d < r.min_distance) {
      r.min_distance = d;
      r.nearest = static_cast<int>(i);
    }
  }
  r.deep = r.min_distance <= tol;
  return r;
}

}  // namespace twrc
