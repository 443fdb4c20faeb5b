#include <cmath>
#include <numbers>
#include <stdexcept>

#include "doctest.h"
#include "twrc/protocol.hpp"
#include "twrc/rng.hpp"

using namespace twrc;
using cd = std::complex<double>;

namespace {
ChannelRealization fixed_channel(uint64_t key) {
  auto g = frame_rng(key, 0, 0);
  FadingModel m;  // Rayleigh
  return draw_channel(m, g);
}
}  // namespace

TEST_CASE("xor map satisfies the exclusive law for every supported set") {
  for (const auto& s : {make_psk(1), make_psk(2), make_psk(3), make_square_qam(4)}) {
    auto m = xor_map(s);
    CHECK(m.in_size == s.size());
    CHECK(m.out_size == s.size());
    CHECK(check_exclusive_law(m, s));
  }
}

TEST_CASE("xor map table is the label xor") {
  auto s = make_psk(2);
  auto m = xor_map(s);
  for (int ia = 0; ia < 4; ++ia) {
    for (int ib = 0; ib < 4; ++ib) {
      int lr = s.index_to_label[ia] ^ s.index_to_label[ib];
      CHECK(m.at(ia, ib) == s.label_to_index[lr]);
    }
  }
}

TEST_CASE("constant map violates the exclusive law; modular addition satisfies it") {
  auto s = make_psk(2);
  NetworkMap constant{4, 4, std::vector<int>(16, 0)};
  CHECK(!check_exclusive_law(constant, s));

  NetworkMap modadd{4, 4, std::vector<int>(16, 0)};
  for (int ia = 0; ia < 4; ++ia)
    for (int ib = 0; ib < 4; ++ib) {
      int l = (s.index_to_label[ia] + s.index_to_label[ib]) % 4;
      modadd.table[ia * 4 + ib] = s.label_to_index[l];
    }
  CHECK(check_exclusive_law(modadd, s));

  NetworkMap wrong_size{2, 2, std::vector<int>(4, 0)};
  CHECK_THROWS_AS(check_exclusive_law(wrong_size, s), std::invalid_argument);
}

TEST_CASE("noiseless frames decode perfectly") {
  const double es = 1e8;
  for (const auto& s : {make_psk(2), make_psk(3), make_square_qam(4)}) {
    for (int trial = 0; trial < 25; ++trial) {
      auto ch = fixed_channel(900 + trial);
      auto g = frame_rng(1000 + trial, 0, 0);
      auto fr = run_frame_dnf_xor(s, es, ch, g);
      CHECK(fr.bit_errors_a_to_b == 0);
      CHECK(fr.bit_errors_b_to_a == 0);
      CHECK(fr.relay_symbol_errors == 0);
      CHECK(fr.bits_sent_per_direction == s.bits_per_symbol);
      CHECK(fr.channel_uses == 2);
    }
  }
  for (auto& d : {construction_1(), construction_2(std::numbers::pi / 4), identity_design(),
                  transcendental_design(1, 0, 0, 1)}) {
    for (const auto& s : {make_psk(2), make_psk(3), make_square_qam(4)}) {
      for (int trial = 0; trial < 25; ++trial) {
        auto ch = fixed_channel(2000 + trial);
        auto g = frame_rng(3000 + trial, 0, 0);
        auto fr = run_frame_dstc(d, s, es, ch, g);
        CHECK(fr.bit_errors_a_to_b == 0);
        CHECK(fr.bit_errors_b_to_a == 0);
        CHECK(fr.relay_symbol_errors == 0);
        CHECK(fr.bits_sent_per_direction == 2 * s.bits_per_symbol);
        CHECK(fr.channel_uses == 4);
      }
    }
  }
}

TEST_CASE("rate bookkeeping: both schemes carry the same bits per channel use") {
  auto s = make_psk(2);
  auto ch = fixed_channel(42);
  auto g1 = frame_rng(1, 0, 0), g2 = frame_rng(2, 0, 0);
  auto fa = run_frame_dnf_xor(s, 100.0, ch, g1);
  auto fb = run_frame_dstc(construction_1(), s, 100.0, ch, g2);
  CHECK(fa.bits_sent_per_direction * fb.channel_uses ==
        fb.bits_sent_per_direction * fa.channel_uses);
}

TEST_CASE("vanishing signal power drives the error rate to one half") {
  auto s = make_psk(2);
  FadingModel m;
  long long bits = 0, errs = 0, bits2 = 0, errs2 = 0;
  for (int f = 0; f < 20000; ++f) {
    auto g = frame_rng(77, 0, static_cast<uint64_t>(f));
    auto ch = draw_channel(m, g);
    auto fr = run_frame_dnf_xor(s, 1e-9, ch, g);
    bits += 2 * fr.bits_sent_per_direction;
    errs += fr.bit_errors_a_to_b + fr.bit_errors_b_to_a;
    auto g2 = frame_rng(78, 0, static_cast<uint64_t>(f));
    auto ch2 = draw_channel(m, g2);
    auto fr2 = run_frame_dstc(construction_1(), s, 1e-9, ch2, g2);
    bits2 += 2 * fr2.bits_sent_per_direction;
    errs2 += fr2.bit_errors_a_to_b + fr2.bit_errors_b_to_a;
  }
  CHECK(std::abs(double(errs) / bits - 0.5) < 0.03);
  CHECK(std::abs(double(errs2) / bits2 - 0.5) < 0.03);
}

TEST_CASE("per-slot average transmit energy equals es for every node") {
  // enumerate the symbol pairs: mean ||x M||^2 / T = es * trace(M M^H)/2,
  // and all shipped generators are trace-2 normalized
  auto s = make_psk(2);
  const double es = 3.0;
  for (auto& d : {construction_1(), construction_2(1.0), transcendental_design(1, 0, 0, 1),
                  identity_design()}) {
    for (const Eigen::Matrix2cd& m : {d.m_a, d.m_b}) {
      double acc = 0;
      for (auto x1 : s.points)
        for (auto x2 : s.points) {
          Eigen::RowVector2cd x;
          x << x1, x2;
          acc += (std::sqrt(es) * x * m).squaredNorm();
        }
      double per_slot = acc / (s.size() * s.size() * 2);
      CHECK(per_slot == doctest::Approx(es).epsilon(1e-9));
    }
  }
  // DNF sends bare constellation points
  double acc = 0;
  for (auto x : s.points) acc += std::norm(std::sqrt(es) * x);
  CHECK(acc / s.size() == doctest::Approx(es).epsilon(1e-12));
}

TEST_CASE("decoder choice does not change the frame outcome") {
  auto s = make_square_qam(4);
  auto d = construction_2(std::numbers::pi / 4);
  for (int f = 0; f < 300; ++f) {
    FrameResult out[3];
    RelayDecoder modes[3] = {RelayDecoder::Brute, RelayDecoder::Conditional,
                             RelayDecoder::QamFast};
    for (int k = 0; k < 3; ++k) {
      auto g = frame_rng(5000, 1, static_cast<uint64_t>(f));
      FadingModel m;
      auto ch = draw_channel(m, g);
      out[k] = run_frame_dstc(d, s, 12.0, ch, g, modes[k]);
    }
    for (int k = 1; k < 3; ++k) {
      CHECK(out[k].bit_errors_a_to_b == out[0].bit_errors_a_to_b);
      CHECK(out[k].bit_errors_b_to_a == out[0].bit_errors_b_to_a);
      CHECK(out[k].relay_symbol_errors == out[0].relay_symbol_errors);
    }
  }
}

TEST_CASE("auto decoder resolves sensibly") {
  // psk: conditional; square qam: fast path; transcendental: brute.
  // All must agree with explicit brute force on the same frame.
  for (const auto& s : {make_psk(2), make_square_qam(4)}) {
    for (auto& d : {construction_1(), transcendental_design(1, 0, 0, 1)}) {
      for (int f = 0; f < 100; ++f) {
        auto g1 = frame_rng(6000, 0, static_cast<uint64_t>(f));
        auto g2 = frame_rng(6000, 0, static_cast<uint64_t>(f));
        FadingModel m;
        auto ch1 = draw_channel(m, g1);
        auto ch2 = draw_channel(m, g2);
        auto a = run_frame_dstc(d, s, 10.0, ch1, g1, RelayDecoder::Auto);
        auto b = run_frame_dstc(d, s, 10.0, ch2, g2, RelayDecoder::Brute);
        CHECK(a.bit_errors_a_to_b == b.bit_errors_a_to_b);
        CHECK(a.bit_errors_b_to_a == b.bit_errors_b_to_a);
      }
    }
  }
}
