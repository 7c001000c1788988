#pragma once

#include <utility>
#include <vector>

#include <Eigen/Core>

#include "seedrank/sbm.hpp"

namespace seedrank {

struct WalkConfig {
  std::vector<NodeId> seeds;
  int K = 6;

  void validate(const Graph& graph) const;
};

/// Landing probabilities r_k^v: row v, column k-1 holds the probability that
/// a walk started uniformly on the seed set sits at v after exactly k steps.
struct LandingProfile {
  Eigen::MatrixXd r;

  std::int64_t num_nodes() const { return r.rows(); }
  int K() const { return static_cast<int>(r.cols()); }
};

/// In-class / out-class partition of the block ids.
struct ClassSplit {
  std::vector<int> in_blocks;
  std::vector<int> out_blocks;

  /// Complement of `in_blocks` in {0..C-1}.
  static ClassSplit from_in_blocks(std::vector<int> in_blocks, int num_blocks);
  void validate(int num_blocks) const;
  bool contains(int block) const;
};

/// Power iteration p_k = T p_{k-1} with T spreading each node's mass evenly
/// over its out-neighbours. Out-degree-zero nodes keep their mass (implicit
/// self-loop), which keeps every column stochastic. Cost O(K |E|).
LandingProfile landing_probabilities(const Graph& graph, const WalkConfig& cfg);

/// Exhaustive enumeration of all walks of length <= K from each seed, each
/// weighted by the product of 1/out-degree along it. Exponential cost;
/// refuses graphs with more than 12 nodes or K > 6.
LandingProfile walk_enumeration_oracle(const Graph& graph,
                                       const WalkConfig& cfg);

/// Class centroids (a, b) of the profile rows. Seed rows are included.
std::pair<Eigen::VectorXd, Eigen::VectorXd> class_mean_profiles(
    const LandingProfile& profile, const std::vector<int>& blocks,
    const ClassSplit& split);

}  // namespace seedrank
