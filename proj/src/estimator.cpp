#include "seedrank/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "seedrank/errors.hpp"

namespace seedrank {

EstimatorMoments adjacency_moments(const Graph& graph) {
  const std::int64_t n = graph.num_nodes();
  if (n < 3) throw ValidationError("estimator: need at least 3 nodes");

  double arcs = 0.0;
  double wedges = 0.0;
  double closed = 0.0;
  std::vector<char> marked(static_cast<std::size_t>(n), 0);
  for (std::int64_t i = 0; i < n; ++i) {
    const auto u = static_cast<NodeId>(i);
    double degree = 0.0;
    for (NodeId j : graph.out_neighbors(u)) {
      if (j == u) continue;
      marked[j] = 1;
      degree += 1.0;
    }
    arcs += degree;
    wedges += degree * (degree - 1.0);
    for (NodeId j : graph.out_neighbors(u)) {
      if (j == u) continue;
      for (NodeId k : graph.out_neighbors(j)) {
        if (k != u && k != j && marked[k]) closed += 1.0;
      }
    }
    for (NodeId j : graph.out_neighbors(u)) marked[j] = 0;
  }
  const auto nd = static_cast<double>(n);
  const double pairs = nd * (nd - 1.0);
  const double triples = pairs * (nd - 2.0);
  EstimatorMoments mo{0.0, 0.0, arcs / pairs, wedges / triples,
                      closed / triples};
  if (graph.num_blocks() == 2) {
    const auto sizes = graph.block_sizes();
    const double fa = static_cast<double>(sizes[0]) / nd;
    const double fb = static_cast<double>(sizes[1]) / nd;
    mo.s2 = fa * fa + fb * fb;
    mo.s3 = fa * fa * fa + fb * fb * fb;
  }
  return mo;
}

EstimatedParams estimate_from_moments(const EstimatorMoments& mo) {
  const double s2 = mo.s2;
  const double s3 = mo.s3;
  const double m1 = mo.m1;
  const double m2 = mo.m2;
  const double m3 = mo.m3;
  const double s2_cubed = s2 * s2 * s2;
  const double denominator =
      (m1 * m1 - m2) * (2.0 * s2_cubed - 3.0 * s3 * s2 + s3);
  if (!(std::abs(denominator) >= 1e-12)) {
    throw NearSingularEstimatorError(
        "estimator: near-singular denominator " + std::to_string(denominator),
        denominator);
  }
  const double numerator = (s3 - s2 * s3) * m1 * m1 * m1 +
                           (s2_cubed - s3) * m2 * m1 +
                           (s3 * s2 - s2_cubed) * m3;
  EstimatedParams est;
  est.moments = mo;
  est.denominator = denominator;
  est.p_out_raw = numerator / denominator;
  est.p_in_raw = (m1 + (s2 - 1.0) * est.p_out_raw) / s2;
  est.p_in_hat = std::clamp(est.p_in_raw, 0.0, 1.0);
  est.p_out_hat = std::clamp(est.p_out_raw, 0.0, 1.0);
  const double total = est.p_in_hat + est.p_out_hat;
  est.alpha_est = total > 0.0 ? (est.p_in_hat - est.p_out_hat) / total : 0.0;
  return est;
}

EstimatedParams estimate(const Graph& graph, std::int64_t n_a,
                         std::int64_t n_b) {
  if (n_a < 0 || n_b < 0 || n_a + n_b != graph.num_nodes()) {
    throw ValidationError("estimator: n_a + n_b must equal n");
  }
  EstimatorMoments mo = adjacency_moments(graph);
  const auto n = static_cast<double>(graph.num_nodes());
  const double fa = static_cast<double>(n_a) / n;
  const double fb = static_cast<double>(n_b) / n;
  mo.s2 = fa * fa + fb * fb;
  mo.s3 = fa * fa * fa + fb * fb * fb;
  return estimate_from_moments(mo);
}

}  // namespace seedrank
