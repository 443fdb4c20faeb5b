#pragma once
#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <string>

#include "twrc/linear_design.hpp"
#include "twrc/signal_set.hpp"

namespace twrc {

// Generator matrix pair for the two end nodes. Codeword rows are
// x_A M_A and x_B M_B; each node's generator satisfies
// trace(M M^H) <= 2 so the per-slot average transmit energy is unit.
struct DstcDesign {
  Eigen::Matrix2cd m_a, m_b;
  std::string name;
};

Eigen::Matrix2cd dstc_codeword(const DstcDesign& d, const Eigen::RowVector2cd& x_a,
                               const Eigen::RowVector2cd& x_b);

DstcDesign identity_design();

// Golden number generators; unitary, full rank differences over Z[j].
DstcDesign construction_1();

// M_A = I and M_B a rotation with tan(phi_g) = sqrt(5); theta = pi/4
// covers Q(j) points (QAM), theta = pi/2^lambda covers 2^lambda PSK.
DstcDesign construction_2(double theta);

// Rows proportional to (x_1 + e^j x_2); e^j = e^{j*1 rad} is
// transcendental, so row ratios never collide on algebraic points.
// kappa scaling brings each node to trace 2.
DstcDesign transcendental_design(std::complex<double> a, std::complex<double> b,
                                 std::complex<double> c, std::complex<double> d);

struct SingularityWitness {
  Eigen::RowVector2cd dx_a, dx_b;
  std::complex<double> det;
};

struct SingularityResult {
  bool minimal = false;
  std::optional<SingularityWitness> witness;
};

// det C(dx_a, dx_b) != 0 for every dx_a != 0_2 and dx_b != 0_2, with
// |det| > rel_tol * max(1, ||C||_F^2).
SingularityResult is_singularity_minimal(const DstcDesign& d, const SignalSet& s,
                                         double rel_tol = 1e-9, long long budget = 200'000'000);

// min over single-node nonzero differences of ||dx M||, the lone
// nonzero singular value of the residual rank-1 difference matrices.
double coding_gain(const DstcDesign& d, const SignalSet& s);

LinearDesign dstc_as_linear_design(const DstcDesign& d);

// "identity" | "construction1" | "construction2:theta=<rad>" |
// "transcendental:a,b,c,d" (entries like 1, -1, 0.5+0.5j)
DstcDesign parse_dstc(const std::string& token);
bool is_dstc_token(const std::string& token);

}  // namespace twrc
