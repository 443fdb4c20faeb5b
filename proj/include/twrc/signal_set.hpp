#pragma once
#include <complex>
#include <string>
#include <vector>

namespace twrc {

enum class SetKind { PSK, SquareQAM, Custom };

// Unit average energy constellation with a Gray bit labeling.
struct SignalSet {
  std::vector<std::complex<double>> points;  // point index order
  int bits_per_symbol = 0;                   // lambda
  std::vector<int> label_to_index;           // bit label -> point index
  std::vector<int> index_to_label;
  SetKind kind = SetKind::Custom;
  std::string name;

  int size() const { return static_cast<int>(points.size()); }
  std::complex<double> symbol(int label) const { return points[label_to_index[label]]; }
  double min_distance() const;
  double avg_energy() const;
};

SignalSet make_psk(int lambda);
SignalSet make_square_qam(int lambda);
SignalSet rotate(const SignalSet& s, double theta);

// Accepts "psk2".."psk256" (power of two) and "qam4"/"qam16"/"qam64"/"qam256".
SignalSet parse_signal_set(const std::string& token);

struct DifferenceSet {
  std::vector<std::complex<double>> deltas;  // deduplicated, 0 included, sorted by (re, im)
};

DifferenceSet difference_set(const SignalSet& s);

// min over distinct point pairs of |d^R| * |d^I|; when zero,
// coordinate-interleaved designs lose full diversity.
double coordinate_product_distance(const SignalSet& s);

}  // namespace twrc
