#include "twrc/relay_decoder.hpp"

#include <atomic>
#include <cmath>
#include <iostream>
#include <limits>
#include <stdexcept>
#include <vector>

namespace twrc {

namespace {
using cd = std::complex<double>;
constexpr cd J{0.0, 1.0};
}  // namespace

Eigen::Vector4d stack_observation(cd y1, cd y2) {
  return {y1.real(), y1.imag(), y2.real(), y2.imag()};
}

Eigen::Matrix<double, 8, 1> stack_symbols(cd a1, cd a2, cd b1, cd b2) {
  Eigen::Matrix<double, 8, 1> x;
  x << a1.real(), a1.imag(), a2.real(), a2.imag(), b1.real(), b1.imag(), b2.real(), b2.imag();
  return x;
}

EquivalentChannel build_h_eq(const DstcDesign& d, cd h_a, cd h_b) {
  EquivalentChannel ec;
  ec.zero_channel = (h_a == cd(0, 0) && h_b == cd(0, 0));

  // column for coordinate k holds [Re, Im] per slot of h^T W_k; the A
  // weights live on codeword row 0 so h^T W picks h_a times a row of
  // M_A (times j for the imaginary coordinate), same for B on row 1
  auto put = [&ec](int col, const Eigen::RowVector2cd& z) {
    ec.h_eq(0, col) = z(0).real();
    ec.h_eq(1, col) = z(0).imag();
    ec.h_eq(2, col) = z(1).real();
    ec.h_eq(3, col) = z(1).imag();
  };
  for (int i = 0; i < 2; ++i) {
    Eigen::RowVector2cd za = h_a * d.m_a.row(i);
    put(2 * i, za);
    put(2 * i + 1, J * za);
    Eigen::RowVector2cd zb = h_b * d.m_b.row(i);
    put(4 + 2 * i, zb);
    put(4 + 2 * i + 1, J * zb);
  }

  Eigen::HouseholderQR<Eigen::Matrix<double, 4, 8>> qr(ec.h_eq);
  ec.q = qr.householderQ() * Eigen::Matrix4d::Identity();
  ec.r = ec.q.transpose() * ec.h_eq;
  for (int i = 0; i < 4; ++i) {
    if (ec.r(i, i) < 0.0) {
      ec.r.row(i) = -ec.r.row(i);
      ec.q.col(i) = -ec.q.col(i);
    }
    for (int k = 0; k < i; ++k) ec.r(i, k) = 0.0;  // scrub QR roundoff
  }

  double off = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int k = i + 1; k < 4; ++k) off = std::max(off, std::abs(ec.r(i, k)));
  ec.r1_offdiag_max = off;
  ec.r1_diagonal = off <= 1e-7 * ec.r.norm();
  return ec;
}

namespace {

RelayDecision finish(const EquivalentChannel& ec, const Eigen::Vector4d& y, const SignalSet& s,
                     const std::array<int, 4>& idx, long long evals, bool fallback) {
  RelayDecision dec;
  dec.idx = idx;
  for (int i = 0; i < 4; ++i) dec.labels[i] = s.index_to_label[idx[i]];
  Eigen::Matrix<double, 8, 1> x = stack_symbols(s.points[idx[0]], s.points[idx[1]],
                                                s.points[idx[2]], s.points[idx[3]]);
  dec.metric = (y - ec.h_eq * x).squaredNorm();
  dec.metric_evals = evals;
  dec.used_fallback = fallback;
  return dec;
}

}  // namespace

RelayDecision ml_bruteforce(const EquivalentChannel& ec, const Eigen::Vector4d& y,
                            const SignalSet& s, double* second_metric) {
  const int m = s.size();
  const auto ha = ec.h_eq.leftCols<4>();
  const auto hb = ec.h_eq.rightCols<4>();

  // a_p = H_A x_A over all A pairs, d_q = y - H_B x_B over all B pairs
  std::vector<Eigen::Vector4d> ap(static_cast<size_t>(m) * m), dq(static_cast<size_t>(m) * m);
  for (int i = 0; i < m; ++i) {
    for (int k = 0; k < m; ++k) {
      Eigen::Vector4d xa{s.points[i].real(), s.points[i].imag(), s.points[k].real(),
                         s.points[k].imag()};
      ap[static_cast<size_t>(i) * m + k] = ha * xa;
      dq[static_cast<size_t>(i) * m + k] = y - hb * xa;
    }
  }

  double best = std::numeric_limits<double>::infinity();
  double second = std::numeric_limits<double>::infinity();
  std::array<int, 4> arg{0, 0, 0, 0};
  long long evals = 0;
  for (int a1 = 0; a1 < m; ++a1) {
    for (int a2 = 0; a2 < m; ++a2) {
      const Eigen::Vector4d& a = ap[static_cast<size_t>(a1) * m + a2];
      for (int b1 = 0; b1 < m; ++b1) {
        for (int b2 = 0; b2 < m; ++b2) {
          const double metric = (dq[static_cast<size_t>(b1) * m + b2] - a).squaredNorm();
          ++evals;
          if (metric < best) {
            second = best;
            best = metric;
            arg = {a1, a2, b1, b2};
          } else if (metric < second && (arg[0] != a1 || arg[1] != a2 || arg[2] != b1 ||
                                         arg[3] != b2)) {
            second = metric;
          }
        }
      }
    }
  }
  if (second_metric) *second_metric = second;
  return finish(ec, y, s, arg, evals, false);
}

RelayDecision ml_conditional(const EquivalentChannel& ec, const Eigen::Vector4d& y,
                             const SignalSet& s) {
  if (!ec.r1_diagonal) {
    static std::atomic<bool> warned{false};
    if (!warned.exchange(true))
      std::cerr << "warning: R_1 not diagonal (non-orthogonal generator rows); conditional"
                   " ML falling back to brute force (reported once)\n";
    RelayDecision dec = ml_bruteforce(ec, y, s);
    dec.used_fallback = true;
    return dec;
  }

  const int m = s.size();
  const Eigen::Vector4d qty = ec.q.transpose() * y;
  const auto r2 = ec.r.rightCols<4>();
  const double r00 = ec.r(0, 0), r11 = ec.r(1, 1), r22 = ec.r(2, 2), r33 = ec.r(3, 3);

  double best = std::numeric_limits<double>::infinity();
  std::array<int, 4> arg{0, 0, 0, 0};
  long long evals = 0;
  for (int b1 = 0; b1 < m; ++b1) {
    for (int b2 = 0; b2 < m; ++b2) {
      Eigen::Vector4d xb{s.points[b1].real(), s.points[b1].imag(), s.points[b2].real(),
                         s.points[b2].imag()};
      const Eigen::Vector4d w = qty - r2 * xb;
      double m1 = std::numeric_limits<double>::infinity();
      int a1 = 0;
      for (int i = 0; i < m; ++i) {
        const double d0 = w(0) - r00 * s.points[i].real();
        const double d1 = w(1) - r11 * s.points[i].imag();
        const double metric = d0 * d0 + d1 * d1;
        ++evals;
        if (metric < m1) {
          m1 = metric;
          a1 = i;
        }
      }
      double m2 = std::numeric_limits<double>::infinity();
      int a2 = 0;
      for (int i = 0; i < m; ++i) {
        const double d2 = w(2) - r22 * s.points[i].real();
        const double d3 = w(3) - r33 * s.points[i].imag();
        const double metric = d2 * d2 + d3 * d3;
        ++evals;
        if (metric < m2) {
          m2 = metric;
          a2 = i;
        }
      }
      if (m1 + m2 < best) {
        best = m1 + m2;
        arg = {a1, a2, b1, b2};
      }
    }
  }
  return finish(ec, y, s, arg, evals, false);
}

RelayDecision ml_conditional_qam(const EquivalentChannel& ec, const Eigen::Vector4d& y,
                                 const SignalSet& s) {
  if (s.kind != SetKind::SquareQAM)
    throw std::invalid_argument("ml_conditional_qam: square QAM signal set required");
  if (!ec.r1_diagonal) {
    static std::atomic<bool> warned{false};
    if (!warned.exchange(true))
      std::cerr << "warning: R_1 not diagonal; QAM fast path falling back to brute force"
                   " (reported once)\n";
    RelayDecision dec = ml_bruteforce(ec, y, s);
    dec.used_fallback = true;
    return dec;
  }

  const int m = s.size();
  const int levels = static_cast<int>(std::lround(std::sqrt(double(m))));
  const double scale = s.points[0].real() / double(-(levels - 1));  // grid unit
  const Eigen::Vector4d qty = ec.q.transpose() * y;
  const auto r2 = ec.r.rightCols<4>();
  const double tiny = 1e-12 * (ec.r.norm() + 1.0);

  // nearest odd level to w/(r*scale), clamped; half-way rounds away
  // from zero which matches the documented tie rule
  auto snap = [&](double w, double r) {
    const double a = w / (r * scale);
    long k = std::lround((a - 1.0) / 2.0);
    long odd = 2 * k + 1;
    if (odd > levels - 1) odd = levels - 1;
    if (odd < -(levels - 1)) odd = -(levels - 1);
    return static_cast<int>((odd + levels - 1) / 2);  // level index
  };
  // fallback scan for a dead coordinate pair (degenerate channel)
  auto scan = [&](double w0, double r0, double w1, double r1, long long& evals) {
    double best = std::numeric_limits<double>::infinity();
    int arg = 0;
    for (int i = 0; i < m; ++i) {
      const double d0 = w0 - r0 * s.points[i].real();
      const double d1 = w1 - r1 * s.points[i].imag();
      ++evals;
      if (d0 * d0 + d1 * d1 < best) {
        best = d0 * d0 + d1 * d1;
        arg = i;
      }
    }
    return arg;
  };

  const double r00 = ec.r(0, 0), r11 = ec.r(1, 1), r22 = ec.r(2, 2), r33 = ec.r(3, 3);
  double best = std::numeric_limits<double>::infinity();
  std::array<int, 4> arg{0, 0, 0, 0};
  long long evals = 0;
  for (int b1 = 0; b1 < m; ++b1) {
    for (int b2 = 0; b2 < m; ++b2) {
      Eigen::Vector4d xb{s.points[b1].real(), s.points[b1].imag(), s.points[b2].real(),
                         s.points[b2].imag()};
      const Eigen::Vector4d w = qty - r2 * xb;
      int a1, a2;
      if (r00 > tiny && r11 > tiny) {
        a1 = snap(w(0), r00) * levels + snap(w(1), r11);
      } else {
        a1 = scan(w(0), r00, w(1), r11, evals);
      }
      if (r22 > tiny && r33 > tiny) {
        a2 = snap(w(2), r22) * levels + snap(w(3), r33);
      } else {
        a2 = scan(w(2), r22, w(3), r33, evals);
      }
      const double d0 = w(0) - r00 * s.points[a1].real();
      const double d1 = w(1) - r11 * s.points[a1].imag();
      const double d2 = w(2) - r22 * s.points[a2].real();
      const double d3 = w(3) - r33 * s.points[a2].imag();
      const double metric = d0 * d0 + d1 * d1 + d2 * d2 + d3 * d3;
      evals += 2;
      if (metric < best) {
        best = metric;
        arg = {a1, a2, b1, b2};
      }
    }
  }
  return finish(ec, y, s, arg, evals, false);
}

}  // namespace twrc
