#pragma once
#include <vector>

#include "twrc/channel.hpp"
#include "twrc/dstc.hpp"
#include "twrc/relay_decoder.hpp"
#include "twrc/signal_set.hpp"

namespace twrc {

struct FrameResult {
  int bits_sent_per_direction = 0;
  int bit_errors_a_to_b = 0;
  int bit_errors_b_to_a = 0;
  int relay_symbol_errors = 0;
  int channel_uses = 0;
};

// Many-to-one relay map: (point index of x_A, point index of x_B) to a
// point index of the broadcast constellation.
struct NetworkMap {
  int in_size = 0;
  int out_size = 0;
  std::vector<int> table;  // in_size^2 entries, row-major in (a, b)

  int at(int ia, int ib) const { return table[static_cast<size_t>(ia) * in_size + ib]; }
};

// Relay output labeled by the bitwise XOR of the two input labels.
NetworkMap xor_map(const SignalSet& s);

// True iff fixing either argument leaves the map injective in the
// other, so each end node can resolve the partner's symbol from the
// relay transmission and its own data.
bool check_exclusive_law(const NetworkMap& m, const SignalSet& s);

enum class RelayDecoder { Brute, Conditional, QamFast, Auto };

// One multiple-access slot, relay joint ML over S^2, one broadcast
// slot carrying the XOR label. lambda bits per direction, 2 uses.
FrameResult run_frame_dnf_xor(const SignalSet& s, double es, const ChannelRealization& ch,
                              Xoshiro256pp& rng);

// Two multiple-access slots carrying the distributed code rows, relay
// joint ML over S^4 via the chosen decoder, two broadcast slots with
// per-index XOR labels. 2*lambda bits per direction, 4 uses. Auto
// picks the QAM fast path for square QAM with diagonal R_1, the
// conditional decoder for other diagonal-R_1 designs, and brute force
// otherwise.
FrameResult run_frame_dstc(const DstcDesign& d, const SignalSet& s, double es,
                           const ChannelRealization& ch, Xoshiro256pp& rng,
                           RelayDecoder decoder = RelayDecoder::Auto);

}  // namespace twrc
