#include <cmath>
#include <complex>

#include "doctest.h"
#include "twrc/channel.hpp"
#include "twrc/rng.hpp"

using namespace twrc;

TEST_CASE("frame_rng is deterministic and keyed on all three inputs") {
  auto a = frame_rng(42, 3, 1000);
  auto b = frame_rng(42, 3, 1000);
  for (int i = 0; i < 16; ++i) CHECK(a.next() == b.next());

  auto c = frame_rng(42, 3, 1001);
  auto d = frame_rng(42, 4, 1000);
  auto e = frame_rng(43, 3, 1000);
  auto base = frame_rng(42, 3, 1000);
  uint64_t x = base.next();
  CHECK(x != c.next());
  CHECK(x != d.next());
  CHECK(x != e.next());
}

TEST_CASE("mix_key is not symmetric in its arguments") {
  CHECK(mix_key(1, 2) != mix_key(2, 1));
  CHECK(mix_key(3, 7) != mix_key(7, 3));
  CHECK(mix_key(0, 0) != mix_key(0, 1));
}

TEST_CASE("uniform01 stays in [0,1) and bits() respects its width") {
  auto g = frame_rng(7, 0, 0);
  long long ones = 0;
  for (int i = 0; i < 100000; ++i) {
    double u = g.uniform01();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    uint32_t b = g.bits(3);
    CHECK(b < 8u);
    ones += g.bits(1);
  }
  CHECK(ones > 48000);
  CHECK(ones < 52000);
}

TEST_CASE("normal_pair moments") {
  auto g = frame_rng(11, 0, 0);
  const int n = 1000000;
  double s1 = 0, s2 = 0, cross = 0;
  for (int i = 0; i < n; ++i) {
    auto [a, b] = normal_pair(g);
    s1 += a + b;
    s2 += a * a + b * b;
    cross += a * b;
  }
  CHECK(std::abs(s1 / (2 * n)) < 0.01);
  CHECK(s2 / (2 * n) == doctest::Approx(1.0).epsilon(0.01));
  CHECK(std::abs(cross / n) < 0.01);
}

TEST_CASE("awgn has the requested variance, split evenly per dimension") {
  auto g = frame_rng(13, 0, 0);
  const int n = 400000;
  const double sigma2 = 3.7;
  double p = 0, pr = 0, cross = 0;
  for (int i = 0; i < n; ++i) {
    auto z = awgn(sigma2, g);
    p += std::norm(z);
    pr += z.real() * z.real();
    cross += z.real() * z.imag();
  }
  CHECK(p / n == doctest::Approx(sigma2).epsilon(0.01));
  CHECK(pr / n == doctest::Approx(sigma2 / 2).epsilon(0.02));
  CHECK(std::abs(cross / n) / sigma2 < 0.01);
}

TEST_CASE("rayleigh fade: zero mean, unit mean square power") {
  FadingModel m;  // Rayleigh default
  auto g = frame_rng(17, 0, 0);
  const int n = 1000000;
  std::complex<double> mean = 0;
  double p = 0;
  for (int i = 0; i < n; ++i) {
    auto h = draw_fade(m, g);
    mean += h;
    p += std::norm(h);
  }
  CHECK(std::abs(mean) / n < 0.01);
  CHECK(p / n == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("rician fade: unit power for every K, fourth moment matches K") {
  // E|h|^4 = (K^2 + 4K + 2) / (K+1)^2 for a Rician coefficient with
  // E|h|^2 = 1; K = 1 (0 dB) gives 7/4, Rayleigh gives 2.
  auto g = frame_rng(19, 0, 0);
  const int n = 1000000;

  FadingModel m{Fading::Rician, 0.0};
  double p = 0, p4 = 0;
  std::complex<double> mean = 0;
  for (int i = 0; i < n; ++i) {
    auto h = draw_fade(m, g);
    p += std::norm(h);
    p4 += std::norm(h) * std::norm(h);
    mean += h;
  }
  CHECK(p / n == doctest::Approx(1.0).epsilon(0.01));
  CHECK(p4 / n == doctest::Approx(1.75).epsilon(0.02));
  // the specular phase is uniform, so the coefficient mean vanishes
  CHECK(std::abs(mean) / n < 0.01);
}

TEST_CASE("rician fade: K -> infinity collapses onto the unit circle") {
  FadingModel m{Fading::Rician, 80.0};
  auto g = frame_rng(23, 0, 0);
  for (int i = 0; i < 1000; ++i) {
    auto h = draw_fade(m, g);
    CHECK(std::abs(std::abs(h) - 1.0) < 0.01);
  }
}

TEST_CASE("rician 5 dB: scatter power is 1/(K+1)") {
  FadingModel m{Fading::Rician, 5.0};
  double k = std::pow(10.0, 0.5);
  auto g = frame_rng(29, 0, 0);
  const int n = 500000;
  double p = 0, p4 = 0;
  for (int i = 0; i < n; ++i) {
    auto h = draw_fade(m, g);
    p += std::norm(h);
    p4 += std::norm(h) * std::norm(h);
  }
  double expect4 = (k * k + 4 * k + 2) / ((k + 1) * (k + 1));
  CHECK(p / n == doctest::Approx(1.0).epsilon(0.01));
  CHECK(p4 / n == doctest::Approx(expect4).epsilon(0.02));
}

TEST_CASE("draw_channel fills four independent links deterministically") {
  FadingModel m;
  auto g1 = frame_rng(31, 2, 5);
  auto g2 = frame_rng(31, 2, 5);
  auto c1 = draw_channel(m, g1);
  auto c2 = draw_channel(m, g2);
  CHECK(c1.h_a == c2.h_a);
  CHECK(c1.h_b == c2.h_b);
  CHECK(c1.h_ap == c2.h_ap);
  CHECK(c1.h_bp == c2.h_bp);
  CHECK(c1.h_a != c1.h_b);
  CHECK(c1.h_ap != c1.h_bp);
}
