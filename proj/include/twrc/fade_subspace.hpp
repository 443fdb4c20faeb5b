#pragma once
#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <vector>

#include "twrc/signal_set.hpp"

namespace twrc {

// Subspace of C^{n_t} orthogonal to a codeword difference column space
// under the bilinear pairing u^T v (no conjugation). For n_t = 2 and
// dim = 1 the canonical spanning vector is [1, gamma] or [0, 1].
struct FadeSubspace {
  int n_t = 2;
  int dim = 0;
  Eigen::MatrixXcd basis;  // n_t x dim, orthonormal columns
  std::optional<std::complex<double>> canonical_ratio;
  bool ratio_at_infinity = false;

  Eigen::MatrixXcd projector() const { return basis * basis.adjoint(); }
};

// { u : u^T C = 0 }, from the SVD of C^T with a relative singular value
// threshold of rank_tol times the largest singular value.
FadeSubspace orth_complement(const Eigen::MatrixXcd& c, double rank_tol = 1e-9);

int difference_rank(const Eigen::MatrixXcd& c, double rank_tol = 1e-9);

// Dedup by Frobenius distance of projection matrices, then sort into a
// deterministic order (dimension, then canonical ratio or projector).
std::vector<FadeSubspace> dedup_subspaces(std::vector<FadeSubspace> subs, double tol = 1e-6);

// All subspaces <[dx_a, dx_b]>^perp over nonzero difference vectors of
// the 2 x 1 multiple access superposition (spatial multiplexing view).
std::vector<FadeSubspace> enumerate_spatial_mux_subspaces(const SignalSet& s, int n_t = 2);

struct DeepFadeResult {
  bool deep = false;
  double min_distance = 0.0;  // sine of the principal angle to the nearest subspace
  int nearest = -1;
};

// True when h lies within tol (sine of principal angle) of some listed
// subspace; the distance is a distance-shortening diagnostic.
DeepFadeResult is_deep_fade(const Eigen::VectorXcd& h, const std::vector<FadeSubspace>& subs,
                            double tol);

}  // namespace twrc
