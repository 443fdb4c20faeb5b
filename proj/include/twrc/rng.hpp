#pragma once
#include <cmath>
#include <cstdint>
#include <numbers>
#include <utility>

namespace twrc {

// splitmix64 step, used for seeding and key mixing only.
inline uint64_t splitmix64(uint64_t& state) {
  uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Order-sensitive: a is scrambled before b is absorbed, so swapping
// small integer arguments cannot alias two streams.
inline uint64_t mix_key(uint64_t a, uint64_t b) {
  uint64_t st = a;
  st = splitmix64(st) ^ b;
  return splitmix64(st);
}

// xoshiro256++ (Blackman/Vigna)
struct Xoshiro256pp {
  uint64_t s[4];

  static constexpr uint64_t rotl(uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  uint64_t next() {
    const uint64_t result = rotl(s[0] + s[3], 23) + s[0];
    const uint64_t t = s[1] << 17;
    s[2] ^= s[0];
    s[3] ^= s[1];
    s[1] ^= s[2];
    s[0] ^= s[3];
    s[2] ^= t;
    s[3] = rotl(s[3], 45);
    return result;
  }

  double uniform01() { return (next() >> 11) * 0x1.0p-53; }  // [0,1)

  // top bits of one draw, exact uniform for power-of-two ranges
  uint32_t bits(int n) { return static_cast<uint32_t>(next() >> (64 - n)); }
};

// One independent stream per simulated frame. Keying on
// (master_seed, snr_index, frame_index) means scheduling and worker
// count cannot change what any frame sees.
inline Xoshiro256pp frame_rng(uint64_t master_seed, uint64_t snr_index,
                              uint64_t frame_index) {
  uint64_t st = mix_key(mix_key(master_seed, snr_index), frame_index);
  Xoshiro256pp g;
  g.s[0] = splitmix64(st);
  g.s[1] = splitmix64(st);
  g.s[2] = splitmix64(st);
  g.s[3] = splitmix64(st);
  return g;
}

// Box-Muller pair of independent N(0,1) samples.
inline std::pair<double, double> normal_pair(Xoshiro256pp& g) {
  double u1 = 1.0 - g.uniform01();  // (0,1], keeps log finite
  double u2 = g.uniform01();
  double r = std::sqrt(-2.0 * std::log(u1));
  return {r * std::cos(2.0 * std::numbers::pi * u2),
          r * std::sin(2.0 * std::numbers::pi * u2)};
}

}  // namespace twrc
