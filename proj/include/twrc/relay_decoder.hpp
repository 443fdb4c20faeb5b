#pragma once
#include <Eigen/Dense>
#include <array>
#include <complex>

#include "twrc/dstc.hpp"
#include "twrc/signal_set.hpp"

namespace twrc {

// Real-valued equivalent of the relay's multiple-access observation.
// The 8 symbol coordinates are ordered
//   [x_A1^R, x_A1^I, x_A2^R, x_A2^I, x_B1^R, x_B1^I, x_B2^R, x_B2^I]
// and the 4 observation coordinates [y_1^R, y_1^I, y_2^R, y_2^I].
// R = [R_1 | R_2]; R_1 is upper triangular with nonnegative diagonal
// and collapses to a diagonal when each node's generator has
// orthogonal rows, which is what the fast conditional decoder needs.
struct EquivalentChannel {
  Eigen::Matrix<double, 4, 8> h_eq;
  Eigen::Matrix4d q;              // orthogonal, h_eq = q * r
  Eigen::Matrix<double, 4, 8> r;
  bool r1_diagonal = false;       // off-diag of R_1 below 1e-7 * ||R||_F
  double r1_offdiag_max = 0.0;
  bool zero_channel = false;      // h_a = h_b = 0; decoding is degenerate
};

EquivalentChannel build_h_eq(const DstcDesign& d, std::complex<double> h_a,
                             std::complex<double> h_b);

// [Re y1, Im y1, Re y2, Im y2]
Eigen::Vector4d stack_observation(std::complex<double> y1, std::complex<double> y2);

// symbol coordinates in the x-tilde ordering above
Eigen::Matrix<double, 8, 1> stack_symbols(std::complex<double> a1, std::complex<double> a2,
                                          std::complex<double> b1, std::complex<double> b2);

struct RelayDecision {
  std::array<int, 4> idx;     // point indices (A1, A2, B1, B2)
  std::array<int, 4> labels;  // bit labels of the same
  double metric = 0.0;        // ||y - H_eq x||^2 of the decision
  long long metric_evals = 0; // symbol-metric evaluations spent
  bool used_fallback = false; // conditional path degraded to brute force
};

// Exhaustive joint minimization over S^4; ties broken by lexicographic
// point index. If second_metric is given it receives the best metric
// over decisions differing from the winner (unique-minimizer margin).
RelayDecision ml_bruteforce(const EquivalentChannel& ec, const Eigen::Vector4d& y,
                            const SignalSet& s, double* second_metric = nullptr);

// O(M^3): conditions on (x_B1, x_B2) and splits the A search using the
// diagonal R_1; falls back to ml_bruteforce when R_1 is not diagonal.
RelayDecision ml_conditional(const EquivalentChannel& ec, const Eigen::Vector4d& y,
                             const SignalSet& s);

// O(M^2): additionally replaces each A symbol search by per-axis
// rounding to the QAM coordinate grid. Square QAM sets only.
RelayDecision ml_conditional_qam(const EquivalentChannel& ec, const Eigen::Vector4d& y,
                                 const SignalSet& s);

}  // namespace twrc
