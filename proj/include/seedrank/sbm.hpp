#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace seedrank {

using NodeId = std::uint32_t;

/// Parameters of G(n, pi, P). Blocks are indexed 0..C-1 internally; files
/// and the CLI use 1-based block ids.
struct SbmParams {
  std::int64_t n = 0;
  std::vector<double> pi;
  Eigen::MatrixXd P;
  bool directed = false;
  bool self_loops = false;

  int num_blocks() const { return static_cast<int>(pi.size()); }

  /// Throws ValidationError naming the first violated invariant.
  void validate() const;

  /// n_i = floor(pi_i n), remainder handed out one node at a time in block
  /// order.
  std::vector<std::int64_t> block_sizes() const;
};

struct AffiliationParams {
  std::int64_t n_a = 0;
  std::int64_t n_b = 0;
  double p_in = 0.0;
  double p_out = 0.0;

  std::int64_t n() const { return n_a + n_b; }
  void validate() const;
};

/// Immutable realized graph in compressed-row form.
///
/// Nodes are laid out block-contiguously by `generate`. Out-neighbour lists
/// are sorted. For undirected graphs the in-neighbour view aliases the
/// out-neighbour arrays; a self-loop appears once in its row.
class Graph {
 public:
  Graph() = default;

  /// Builds a graph from an arc list. Undirected graphs take each edge once
  /// (either orientation) and symmetrize; duplicates are merged.
  static Graph from_edges(std::int64_t n,
                          std::span<const std::pair<NodeId, NodeId>> edges,
                          std::vector<int> blocks, bool directed);

  /// CSR adoption; `offsets` has n+1 entries and rows must be sorted.
  static Graph from_csr(std::vector<std::uint64_t> offsets,
                        std::vector<NodeId> targets, std::vector<int> blocks,
                        bool directed);

  std::int64_t num_nodes() const { return n_; }
  bool directed() const { return directed_; }

  /// Undirected: unordered edges (self-loops count once). Directed: arcs.
  std::uint64_t num_edges() const;

  std::span<const NodeId> out_neighbors(NodeId u) const {
    return {targets_.data() + offsets_[u], offsets_[u + 1] - offsets_[u]};
  }
  std::span<const NodeId> in_neighbors(NodeId u) const;
  std::uint64_t out_degree(NodeId u) const {
    return offsets_[u + 1] - offsets_[u];
  }
  bool has_edge(NodeId u, NodeId v) const;

  /// 0-based block of each node.
  const std::vector<int>& blocks() const { return blocks_; }
  int num_blocks() const { return num_blocks_; }
  std::vector<std::int64_t> block_sizes() const;

  std::span<const std::uint64_t> offsets() const { return offsets_; }
  std::span<const NodeId> targets() const { return targets_; }

  /// Sorted (u, v) list; undirected graphs list each edge once with u <= v.
  std::vector<std::pair<NodeId, NodeId>> edge_list() const;

  /// Relabels node u as perm[u].
  Graph permuted(std::span<const NodeId> perm) const;

 private:
  void build_in_view();

  std::int64_t n_ = 0;
  bool directed_ = false;
  int num_blocks_ = 0;
  std::vector<std::uint64_t> offsets_{0};
  std::vector<NodeId> targets_;
  std::vector<std::uint64_t> in_offsets_;
  std::vector<NodeId> in_sources_;
  std::vector<int> blocks_;
};

/// One realization of G(n, pi, P). Every potential edge is an independent
/// Bernoulli draw taken in a fixed (row, column) order, so the output is a
/// pure function of (params, rng_seed).
Graph generate(const SbmParams& params, std::uint64_t rng_seed);

/// n_a p_in + n_b p_out: expected degree of a node in block a.
double expected_degree(const AffiliationParams& params);

/// (c_in + c_out) / 2 with c = N p and N = n / 2, the convention behind the
/// "<d>" axis of the balanced two-block benchmark.
double mean_affinity(const AffiliationParams& params);

/// Balanced affiliation model at a given c_out / c_in ratio and mean
/// affinity (c_in + c_out) / 2.
AffiliationParams affiliation_from_ratio(std::int64_t n, double ratio,
                                         double mean_affinity);

SbmParams affiliation_to_sbm(const AffiliationParams& aff);

}  // namespace seedrank
