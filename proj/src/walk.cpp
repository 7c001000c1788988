#include "seedrank/walk.hpp"

#include <algorithm>
#include <functional>

#include "seedrank/errors.hpp"

namespace seedrank {

void WalkConfig::validate(const Graph& graph) const {
  if (seeds.empty()) throw ValidationError("walk: seed set must be non-empty");
  if (K < 1) throw ValidationError("walk: K must be at least 1");
  for (NodeId s : seeds) {
    if (s >= graph.num_nodes()) {
      throw ValidationError("walk: seed " + std::to_string(s) +
                            " is not a valid node");
    }
  }
}

ClassSplit ClassSplit::from_in_blocks(std::vector<int> in_blocks,
                                      int num_blocks) {
  ClassSplit split;
  std::sort(in_blocks.begin(), in_blocks.end());
  in_blocks.erase(std::unique(in_blocks.begin(), in_blocks.end()),
                  in_blocks.end());
  for (int b = 0; b < num_blocks; ++b) {
    if (!std::binary_search(in_blocks.begin(), in_blocks.end(), b)) {
      split.out_blocks.push_back(b);
    }
  }
  split.in_blocks = std::move(in_blocks);
  split.validate(num_blocks);
  return split;
}

void ClassSplit::validate(int num_blocks) const {
  if (in_blocks.empty() || out_blocks.empty()) {
    throw ValidationError("class split: both classes need at least one block");
  }
  std::vector<int> seen(static_cast<std::size_t>(num_blocks), 0);
  for (const auto* side : {&in_blocks, &out_blocks}) {
    for (int b : *side) {
      if (b < 0 || b >= num_blocks) {
        throw ValidationError("class split: block " + std::to_string(b + 1) +
                              " out of range");
      }
      ++seen[static_cast<std::size_t>(b)];
    }
  }
  for (int count : seen) {
    if (count != 1) {
      throw ValidationError("class split: S and T must partition the blocks");
    }
  }
}

bool ClassSplit::contains(int block) const {
  return std::find(in_blocks.begin(), in_blocks.end(), block) !=
         in_blocks.end();
}

LandingProfile landing_probabilities(const Graph& graph,
                                     const WalkConfig& cfg) {
  cfg.validate(graph);
  const auto n = graph.num_nodes();
  Eigen::VectorXd current = Eigen::VectorXd::Zero(n);
  const double share = 1.0 / static_cast<double>(cfg.seeds.size());
  for (NodeId s : cfg.seeds) current[s] += share;

  LandingProfile profile{Eigen::MatrixXd::Zero(n, cfg.K)};
  Eigen::VectorXd next(n);
  for (int k = 0; k < cfg.K; ++k) {
    next.setZero();
    for (std::int64_t u = 0; u < n; ++u) {
      const double mass = current[u];
      if (mass == 0.0) continue;
      auto row = graph.out_neighbors(static_cast<NodeId>(u));
      if (row.empty()) {
        next[u] += mass;
        continue;
      }
      const double each = mass / static_cast<double>(row.size());
      for (NodeId v : row) next[v] += each;
    }
    profile.r.col(k) = next;
    current.swap(next);
  }
  return profile;
}

LandingProfile walk_enumeration_oracle(const Graph& graph,
                                       const WalkConfig& cfg) {
  cfg.validate(graph);
  if (graph.num_nodes() > 12 || cfg.K > 6) {
    throw RefusalError(
        "walk oracle: refusing n > 12 or K > 6 (exponential enumeration)");
  }
  LandingProfile profile{Eigen::MatrixXd::Zero(graph.num_nodes(), cfg.K)};
  const double start = 1.0 / static_cast<double>(cfg.seeds.size());

  std::function<void(NodeId, int, double)> extend = [&](NodeId at, int steps,
                                                        double weight) {
    if (steps > 0) profile.r(at, steps - 1) += weight;
    if (steps == cfg.K) return;
    auto row = graph.out_neighbors(at);
    if (row.empty()) {
      extend(at, steps + 1, weight);
      return;
    }
    const double each = weight / static_cast<double>(row.size());
    for (NodeId v : row) extend(v, steps + 1, each);
  };
  for (NodeId s : cfg.seeds) extend(s, 0, start);
  return profile;
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> class_mean_profiles(
    const LandingProfile& profile, const std::vector<int>& blocks,
    const ClassSplit& split) {
  if (static_cast<std::int64_t>(blocks.size()) != profile.num_nodes()) {
    throw ValidationError("class means: labels must cover all nodes");
  }
  Eigen::VectorXd a = Eigen::VectorXd::Zero(profile.K());
  Eigen::VectorXd b = Eigen::VectorXd::Zero(profile.K());
  std::int64_t count_a = 0;
  std::int64_t count_b = 0;
  for (std::int64_t v = 0; v < profile.num_nodes(); ++v) {
    if (split.contains(blocks[v])) {
      a += profile.r.row(v).transpose();
      ++count_a;
    } else {
      b += profile.r.row(v).transpose();
      ++count_b;
    }
  }
  if (count_a == 0 || count_b == 0) {
    throw ValidationError("class means: empty class");
  }
  return {a / static_cast<double>(count_a), b / static_cast<double>(count_b)};
}

}  // namespace seedrank
