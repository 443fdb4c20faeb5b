#pragma once
#include <Eigen/Dense>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "twrc/fade_subspace.hpp"
#include "twrc/signal_set.hpp"

namespace twrc {

// n_t x T space-time design, linear over the 2K real symbol coordinates
// ordered x_1^R, x_1^I, ..., x_K^R, x_K^I.
struct LinearDesign {
  int n_t = 0, T = 0, K = 0;
  std::vector<Eigen::MatrixXcd> weights;  // 2K matrices of shape n_t x T
  std::string name;

  Eigen::MatrixXcd codeword(const std::vector<std::complex<double>>& x) const;
};

// Catalogue: alamouti (alias g2), g4, qod4, ciod2 (alias gciod_a1),
// ciod4 (alias gciod_a2), spatial_mux.
LinearDesign named_design(const std::string& name);
std::vector<std::pair<std::string, std::string>> design_catalogue();

struct RankSpectrum {
  std::map<int, long long> counts;      // rank -> number of nonzero difference vectors
  int min_rank = 0;
  std::vector<FadeSubspace> subspaces;  // nontrivial (rank < n_t), deduplicated
  long long total = 0;                  // |dS|^K - 1
};

RankSpectrum rank_spectrum(const LinearDesign& d, const SignalSet& s, double rank_tol = 1e-9,
                           long long budget = 10'000'000);

}  // namespace twrc
