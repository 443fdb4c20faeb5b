#include "twrc/protocol.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace twrc {

namespace {
using cd = std::complex<double>;

// coherent per-symbol detection of a scaled point, returns point index
int detect_point(cd y, cd gain, const SignalSet& s) {
  double best = std::numeric_limits<double>::infinity();
  int arg = 0;
  for (int i = 0; i < s.size(); ++i) {
    double m = std::norm(y - gain * s.points[i]);
    if (m < best) {
      best = m;
      arg = i;
    }
  }
  return arg;
}

}  // namespace

NetworkMap xor_map(const SignalSet& s) {
  NetworkMap m;
  m.in_size = s.size();
  m.out_size = s.size();
  m.table.resize(static_cast<size_t>(m.in_size) * m.in_size);
  for (int ia = 0; ia < m.in_size; ++ia)
    for (int ib = 0; ib < m.in_size; ++ib)
      m.table[static_cast<size_t>(ia) * m.in_size + ib] =
          s.label_to_index[s.index_to_label[ia] ^ s.index_to_label[ib]];
  return m;
}

bool check_exclusive_law(const NetworkMap& m, const SignalSet& s) {
  if (m.in_size != s.size() ||
      m.table.size() != static_cast<size_t>(m.in_size) * m.in_size)
    throw std::invalid_argument("exclusive law: map and signal set sizes disagree");
  const int n = m.in_size;
  for (int ib = 0; ib < n; ++ib)
    for (int ia = 0; ia < n; ++ia)
      for (int ia2 = ia + 1; ia2 < n; ++ia2)
        if (m.at(ia, ib) == m.at(ia2, ib)) return false;
  for (int ia = 0; ia < n; ++ia)
    for (int ib = 0; ib < n; ++ib)
      for (int ib2 = ib + 1; ib2 < n; ++ib2)
        if (m.at(ia, ib) == m.at(ia, ib2)) return false;
  return true;
}

FrameResult run_frame_dnf_xor(const SignalSet& s, double es, const ChannelRealization& ch,
                              Xoshiro256pp& rng) {
  if (es <= 0.0) throw std::invalid_argument("run_frame: es must be positive");
  const int lambda = s.bits_per_symbol;
  const double a = std::sqrt(es);

  const int la = static_cast<int>(rng.bits(lambda));
  const int lb = static_cast<int>(rng.bits(lambda));
  const int ia = s.label_to_index[la];
  const int ib = s.label_to_index[lb];

  // multiple access
  const cd y_r = a * (ch.h_a * s.points[ia] + ch.h_b * s.points[ib]) + awgn(1.0, rng);

  // joint ML over the pair
  double best = std::numeric_limits<double>::infinity();
  int ja = 0, jb = 0;
  for (int i = 0; i < s.size(); ++i) {
    const cd ya = y_r - a * ch.h_a * s.points[i];
    for (int k = 0; k < s.size(); ++k) {
      const double m = std::norm(ya - a * ch.h_b * s.points[k]);
      if (m < best) {
        best = m;
        ja = i;
        jb = k;
      }
    }
  }

  // broadcast of the XOR label
  const int lr = s.index_to_label[ja] ^ s.index_to_label[jb];
  const cd x_r = s.symbol(lr);
  const cd y_a = a * ch.h_ap * x_r + awgn(1.0, rng);
  const cd y_b = a * ch.h_bp * x_r + awgn(1.0, rng);

  const int lr_at_a = s.index_to_label[detect_point(y_a, a * ch.h_ap, s)];
  const int lr_at_b = s.index_to_label[detect_point(y_b, a * ch.h_bp, s)];
  const int lb_hat = lr_at_a ^ la;  // A removes its own data
  const int la_hat = lr_at_b ^ lb;

  FrameResult fr;
  fr.bits_sent_per_direction = lambda;
  fr.channel_uses = 2;
  fr.bit_errors_b_to_a = std::popcount(static_cast<unsigned>(lb_hat ^ lb));
  fr.bit_errors_a_to_b = std::popcount(static_cast<unsigned>(la_hat ^ la));
  fr.relay_symbol_errors = (ja != ia) + (jb != ib);
  return fr;
}

FrameResult run_frame_dstc(const DstcDesign& d, const SignalSet& s, double es,
                           const ChannelRealization& ch, Xoshiro256pp& rng,
                           RelayDecoder decoder) {
  if (es <= 0.0) throw std::invalid_argument("run_frame: es must be positive");
  const int lambda = s.bits_per_symbol;
  const double a = std::sqrt(es);

  int labels[4];  // A1, A2, B1, B2
  int idx[4];
  for (int i = 0; i < 4; ++i) {
    labels[i] = static_cast<int>(rng.bits(lambda));
    idx[i] = s.label_to_index[labels[i]];
  }

  // two multiple-access slots
  Eigen::RowVector2cd x_a(s.points[idx[0]], s.points[idx[1]]);
  Eigen::RowVector2cd x_b(s.points[idx[2]], s.points[idx[3]]);
  Eigen::Matrix2cd c = dstc_codeword(d, x_a, x_b);
  Eigen::RowVector2cd h(ch.h_a, ch.h_b);
  Eigen::RowVector2cd y_row = a * (h * c);
  const cd z1 = awgn(1.0, rng);
  const cd z2 = awgn(1.0, rng);
  y_row(0) += z1;
  y_row(1) += z2;

  // the decoders work on the unit-energy model, so strip the scale
  EquivalentChannel ec = build_h_eq(d, ch.h_a, ch.h_b);
  Eigen::Vector4d y_t = stack_observation(y_row(0) / a, y_row(1) / a);

  RelayDecoder mode = decoder;
  if (mode == RelayDecoder::Auto) {
    if (!ec.r1_diagonal)
      mode = RelayDecoder::Brute;
    else if (s.kind == SetKind::SquareQAM)
      mode = RelayDecoder::QamFast;
    else
      mode = RelayDecoder::Conditional;
  }
  RelayDecision dec;
  switch (mode) {
    case RelayDecoder::Brute: dec = ml_bruteforce(ec, y_t, s); break;
    case RelayDecoder::Conditional: dec = ml_conditional(ec, y_t, s); break;
    case RelayDecoder::QamFast: dec = ml_conditional_qam(ec, y_t, s); break;
    default: throw std::logic_error("unresolved decoder");
  }

  // two broadcast slots, one XOR label per symbol index
  const int lr1 = dec.labels[0] ^ dec.labels[2];
  const int lr2 = dec.labels[1] ^ dec.labels[3];
  FrameResult fr;
  fr.bits_sent_per_direction = 2 * lambda;
  fr.channel_uses = 4;
  for (int t = 0; t < 2; ++t) {
    const int lr = t == 0 ? lr1 : lr2;
    const cd x_r = s.symbol(lr);
    const cd y_a = a * ch.h_ap * x_r + awgn(1.0, rng);
    const cd y_b = a * ch.h_bp * x_r + awgn(1.0, rng);
    const int lr_at_a = s.index_to_label[detect_point(y_a, a * ch.h_ap, s)];
    const int lr_at_b = s.index_to_label[detect_point(y_b, a * ch.h_bp, s)];
    const int lb_hat = lr_at_a ^ labels[t];      // A holds x_A1, x_A2
    const int la_hat = lr_at_b ^ labels[2 + t];  // B holds x_B1, x_B2
    fr.bit_errors_b_to_a += std::popcount(static_cast<unsigned>(lb_hat ^ labels[2 + t]));
    fr.bit_errors_a_to_b += std::popcount(static_cast<unsigned>(la_hat ^ labels[t]));
  }
  for (int i = 0; i < 4; ++i) fr.relay_symbol_errors += dec.idx[i] != idx[i];
  return fr;
}

}  // namespace twrc
