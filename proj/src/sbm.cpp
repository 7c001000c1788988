#include "seedrank/sbm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "seedrank/errors.hpp"
#include "seedrank/rng.hpp"

namespace seedrank {

namespace {

constexpr double kSumTolerance = 1e-12;

[[noreturn]] void invalid(const std::string& what) {
  throw ValidationError("invalid SBM parameters: " + what);
}

}  // namespace

void SbmParams::validate() const {
  if (n <= 0) invalid("n must be positive");
  if (n > std::int64_t{0xFFFFFFFF}) invalid("n exceeds 32-bit node ids");
  const auto c = static_cast<Eigen::Index>(pi.size());
  if (c == 0) invalid("pi must be non-empty");
  if (P.rows() != c || P.cols() != c) {
    invalid("P must be C x C with C = len(pi)");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < pi.size(); ++i) {
    if (!(pi[i] > 0.0 && pi[i] <= 1.0)) {
      invalid("pi[" + std::to_string(i) + "] must lie in (0, 1]");
    }
    total += pi[i];
  }
  if (std::abs(total - 1.0) > kSumTolerance) invalid("sum(pi) must equal 1");
  for (Eigen::Index i = 0; i < c; ++i) {
    for (Eigen::Index j = 0; j < c; ++j) {
      const double p = P(i, j);
      if (!(p >= 0.0 && p <= 1.0)) {
        invalid("P[" + std::to_string(i) + "][" + std::to_string(j) +
                "] must lie in [0, 1]");
      }
      if (!directed && std::abs(p - P(j, i)) > kSumTolerance) {
        invalid("P must be symmetric for undirected graphs");
      }
    }
  }
  for (std::size_t i = 0; i < pi.size(); ++i) {
    if (std::llround(pi[i] * static_cast<double>(n)) < 1) {
      invalid("block " + std::to_string(i) + " would be empty");
    }
  }
}

std::vector<std::int64_t> SbmParams::block_sizes() const {
  std::vector<std::int64_t> sizes(pi.size());
  std::int64_t assigned = 0;
  for (std::size_t i = 0; i < pi.size(); ++i) {
    // The slack absorbs products such as 0.1 * 10 = 0.99999...
    sizes[i] = static_cast<std::int64_t>(
        std::floor(pi[i] * static_cast<double>(n) + 1e-9));
    assigned += sizes[i];
  }
  for (std::size_t i = 0; assigned < n; i = (i + 1) % sizes.size()) {
    ++sizes[i];
    ++assigned;
  }
  return sizes;
}

void AffiliationParams::validate() const {
  if (n_a < 0 || n_b < 0 || n_a + n_b <= 0) {
    throw ValidationError("invalid affiliation parameters: block sizes");
  }
  if (!(p_in >= 0.0 && p_in <= 1.0) || !(p_out >= 0.0 && p_out <= 1.0)) {
    throw ValidationError(
        "invalid affiliation parameters: p_in and p_out must lie in [0, 1]");
  }
}

// --- Graph ------------------------------------------------------------------

Graph Graph::from_edges(std::int64_t n,
                        std::span<const std::pair<NodeId, NodeId>> edges,
                        std::vector<int> blocks, bool directed) {
  if (n < 0) throw ValidationError("graph: negative node count");
  if (static_cast<std::int64_t>(blocks.size()) != n) {
    throw ValidationError("graph: labels must cover every node");
  }
  std::vector<std::pair<NodeId, NodeId>> arcs;
  arcs.reserve(directed ? edges.size() : 2 * edges.size());
  for (const auto& [u, v] : edges) {
    if (u >= n || v >= n) {
      throw ValidationError("graph: edge endpoint " +
                            std::to_string(std::max(u, v)) +
                            " is not a valid node index");
    }
    arcs.emplace_back(u, v);
    if (!directed && u != v) arcs.emplace_back(v, u);
  }
  std::sort(arcs.begin(), arcs.end());
  arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
  std::vector<std::uint64_t> offsets(static_cast<std::size_t>(n) + 1, 0);
  std::vector<NodeId> targets;
  targets.reserve(arcs.size());
  for (const auto& [u, v] : arcs) {
    ++offsets[u + 1];
    targets.push_back(v);
  }
  std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
  return from_csr(std::move(offsets), std::move(targets), std::move(blocks),
                  directed);
}

Graph Graph::from_csr(std::vector<std::uint64_t> offsets,
                      std::vector<NodeId> targets, std::vector<int> blocks,
                      bool directed) {
  if (offsets.empty() || offsets.back() != targets.size()) {
    throw ValidationError("graph: malformed CSR offsets");
  }
  Graph g;
  g.n_ = static_cast<std::int64_t>(offsets.size()) - 1;
  if (static_cast<std::int64_t>(blocks.size()) != g.n_) {
    throw ValidationError("graph: labels must cover every node");
  }
  for (NodeId v : targets) {
    if (v >= g.n_) throw ValidationError("graph: edge endpoint out of range");
  }
  int max_block = -1;
  for (int b : blocks) {
    if (b < 0) throw ValidationError("graph: negative block label");
    max_block = std::max(max_block, b);
  }
  g.directed_ = directed;
  g.num_blocks_ = max_block + 1;
  g.offsets_ = std::move(offsets);
  g.targets_ = std::move(targets);
  g.blocks_ = std::move(blocks);
  if (directed) g.build_in_view();
  return g;
}

void Graph::build_in_view() {
  in_offsets_.assign(static_cast<std::size_t>(n_) + 1, 0);
  for (NodeId v : targets_) ++in_offsets_[v + 1];
  std::partial_sum(in_offsets_.begin(), in_offsets_.end(),
                   in_offsets_.begin());
  in_sources_.resize(targets_.size());
  std::vector<std::uint64_t> cursor(in_offsets_.begin(), in_offsets_.end() - 1);
  for (std::int64_t u = 0; u < n_; ++u) {
    for (auto e = offsets_[u]; e < offsets_[u + 1]; ++e) {
      in_sources_[cursor[targets_[e]]++] = static_cast<NodeId>(u);
    }
  }
}

std::span<const NodeId> Graph::in_neighbors(NodeId u) const {
  if (!directed_) return out_neighbors(u);
  return {in_sources_.data() + in_offsets_[u],
          in_offsets_[u + 1] - in_offsets_[u]};
}

std::uint64_t Graph::num_edges() const {
  if (directed_) return targets_.size();
  std::uint64_t loops = 0;
  for (std::int64_t u = 0; u < n_; ++u) {
    if (has_edge(static_cast<NodeId>(u), static_cast<NodeId>(u))) ++loops;
  }
  return (targets_.size() - loops) / 2 + loops;
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  auto row = out_neighbors(u);
  return std::binary_search(row.begin(), row.end(), v);
}

std::vector<std::int64_t> Graph::block_sizes() const {
  std::vector<std::int64_t> sizes(static_cast<std::size_t>(num_blocks_), 0);
  for (int b : blocks_) ++sizes[static_cast<std::size_t>(b)];
  return sizes;
}

std::vector<std::pair<NodeId, NodeId>> Graph::edge_list() const {
  std::vector<std::pair<NodeId, NodeId>> out;
  out.reserve(directed_ ? targets_.size() : targets_.size() / 2 + 1);
  for (std::int64_t u = 0; u < n_; ++u) {
    for (NodeId v : out_neighbors(static_cast<NodeId>(u))) {
      if (directed_ || v >= u) out.emplace_back(static_cast<NodeId>(u), v);
    }
  }
  return out;
}

Graph Graph::permuted(std::span<const NodeId> perm) const {
  if (static_cast<std::int64_t>(perm.size()) != n_) {
    throw ValidationError("graph: permutation size mismatch");
  }
  std::vector<int> blocks(blocks_.size());
  std::vector<std::uint64_t> offsets(static_cast<std::size_t>(n_) + 1, 0);
  for (std::int64_t u = 0; u < n_; ++u) {
    blocks[perm[u]] = blocks_[u];
    offsets[perm[u] + 1] = out_degree(static_cast<NodeId>(u));
  }
  std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
  std::vector<NodeId> targets(targets_.size());
  for (std::int64_t u = 0; u < n_; ++u) {
    auto dst = targets.begin() + static_cast<std::ptrdiff_t>(offsets[perm[u]]);
    auto end = dst;
    for (NodeId v : out_neighbors(static_cast<NodeId>(u))) *end++ = perm[v];
    std::sort(dst, end);
  }
  return from_csr(std::move(offsets), std::move(targets), std::move(blocks),
                  directed_);
}

// --- Generation -------------------------------------------------------------

Graph generate(const SbmParams& params, std::uint64_t rng_seed) {
  params.validate();
  const auto sizes = params.block_sizes();
  const std::int64_t n = params.n;
  const int c = params.num_blocks();

  std::vector<int> blocks;
  blocks.reserve(static_cast<std::size_t>(n));
  std::vector<std::int64_t> block_start(static_cast<std::size_t>(c) + 1, 0);
  for (int b = 0; b < c; ++b) {
    blocks.insert(blocks.end(), static_cast<std::size_t>(sizes[b]), b);
    block_start[b + 1] = block_start[b] + sizes[b];
  }

  std::vector<std::vector<BernoulliThreshold>> coin(static_cast<std::size_t>(c));
  for (int i = 0; i < c; ++i) {
    for (int j = 0; j < c; ++j) coin[i].emplace_back(params.P(i, j));
  }

  Rng rng(rng_seed);
  // Row u samples every candidate v >= u (undirected) or every v (directed),
  // block segment by block segment.
  auto sample_row = [&](std::int64_t u, std::vector<NodeId>& out) {
    const int bu = blocks[u];
    for (int bv = 0; bv < c; ++bv) {
      std::int64_t lo = block_start[bv];
      const std::int64_t hi = block_start[bv + 1];
      if (!params.directed) lo = std::max(lo, u);
      if (lo >= hi) continue;
      const auto& flip = coin[bu][bv];
      if (flip.never()) continue;
      for (std::int64_t v = lo; v < hi; ++v) {
        if (v == u && !params.self_loops) continue;
        if (flip(rng)) out.push_back(static_cast<NodeId>(v));
      }
    }
  };

  std::vector<std::uint64_t> offsets(static_cast<std::size_t>(n) + 1, 0);
  std::vector<NodeId> targets;
  if (params.directed) {
    for (std::int64_t u = 0; u < n; ++u) {
      sample_row(u, targets);
      offsets[u + 1] = targets.size();
    }
    return Graph::from_csr(std::move(offsets), std::move(targets),
                           std::move(blocks), true);
  }

  std::vector<std::uint64_t> upper_offsets(static_cast<std::size_t>(n) + 1, 0);
  std::vector<NodeId> upper;
  for (std::int64_t u = 0; u < n; ++u) {
    sample_row(u, upper);
    upper_offsets[u + 1] = upper.size();
  }
  for (std::int64_t u = 0; u < n; ++u) {
    for (auto e = upper_offsets[u]; e < upper_offsets[u + 1]; ++e) {
      ++offsets[u + 1];
      if (upper[e] != u) ++offsets[upper[e] + 1];
    }
  }
  std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
  targets.resize(offsets.back());
  std::vector<std::uint64_t> cursor(offsets.begin(), offsets.end() - 1);
  // Visiting rows in increasing u appends lower neighbours in order before
  // the row's own (larger) upper neighbours, so every row ends up sorted.
  for (std::int64_t u = 0; u < n; ++u) {
    for (auto e = upper_offsets[u]; e < upper_offsets[u + 1]; ++e) {
      const NodeId v = upper[e];
      targets[cursor[u]++] = v;
      if (v != u) targets[cursor[v]++] = static_cast<NodeId>(u);
    }
  }
  return Graph::from_csr(std::move(offsets), std::move(targets),
                         std::move(blocks), false);
}

// --- Affiliation helpers ----------------------------------------------------

double expected_degree(const AffiliationParams& params) {
  return static_cast<double>(params.n_a) * params.p_in +
         static_cast<double>(params.n_b) * params.p_out;
}

double mean_affinity(const AffiliationParams& params) {
  const double half = static_cast<double>(params.n()) / 2.0;
  return 0.5 * (half * params.p_in + half * params.p_out);
}

AffiliationParams affiliation_from_ratio(std::int64_t n, double ratio,
                                         double mean_affinity) {
  if (n < 2 || n % 2 != 0) {
    throw ValidationError("affiliation: n must be even and at least 2");
  }
  if (!(ratio >= 0.0)) throw ValidationError("affiliation: ratio must be >= 0");
  const double half = static_cast<double>(n) / 2.0;
  const double c_in = 2.0 * mean_affinity / (1.0 + ratio);
  AffiliationParams aff{n / 2, n / 2, c_in / half, ratio * c_in / half};
  aff.validate();
  return aff;
}

SbmParams affiliation_to_sbm(const AffiliationParams& aff) {
  aff.validate();
  SbmParams params;
  params.n = aff.n();
  const double n = static_cast<double>(params.n);
  params.pi = {static_cast<double>(aff.n_a) / n,
               static_cast<double>(aff.n_b) / n};
  params.P.resize(2, 2);
  params.P << aff.p_in, aff.p_out, aff.p_out, aff.p_in;
  return params;
}

}  // namespace seedrank
