#pragma once
#include <cmath>
#include <complex>

#include "twrc/rng.hpp"

namespace twrc {

enum class Fading { Rayleigh, Rician };

struct FadingModel {
  Fading kind = Fading::Rayleigh;
  double k_factor_db = 0.0;  // Rician only
};

// Quasi-static fade coefficient with E|h|^2 = 1 for every K factor.
// The specular component carries an independent uniform phase per
// link. A fixed LOS phase would be harmless on a point-to-point link,
// but in the multiple access phase the relative phase of the two
// uplinks decides how close h lands to a singular fade state, so
// pinning it biases the comparison between relay maps.
inline std::complex<double> draw_fade(const FadingModel& m, Xoshiro256pp& g) {
  auto [a, b] = normal_pair(g);
  std::complex<double> scatter(a * std::sqrt(0.5), b * std::sqrt(0.5));
  if (m.kind == Fading::Rayleigh) return scatter;
  double k = std::pow(10.0, m.k_factor_db / 10.0);
  double phase = 2.0 * std::numbers::pi * g.uniform01();
  return std::polar(std::sqrt(k / (k + 1.0)), phase) +
         std::sqrt(1.0 / (k + 1.0)) * scatter;
}

// One CN(0, sigma2) sample: variance sigma2/2 per real dimension.
inline std::complex<double> awgn(double sigma2, Xoshiro256pp& g) {
  auto [a, b] = normal_pair(g);
  double s = std::sqrt(sigma2 * 0.5);
  return {s * a, s * b};
}

// Fades for one protocol frame: two uplinks seen by the relay and the
// two downlinks, all drawn i.i.d.
struct ChannelRealization {
  std::complex<double> h_a, h_b;    // A-R, B-R
  std::complex<double> h_ap, h_bp;  // R-A, R-B
};

inline ChannelRealization draw_channel(const FadingModel& m, Xoshiro256pp& g) {
  ChannelRealization ch;
  ch.h_a = draw_fade(m, g);
  ch.h_b = draw_fade(m, g);
  ch.h_ap = draw_fade(m, g);
  ch.h_bp = draw_fade(m, g);
  return ch;
}

}  // namespace twrc
