#pragma once

#include <cstdint>

#include "seedrank/sbm.hpp"

namespace seedrank {

/// Size and adjacency moments feeding the affiliation-model estimator.
///
/// s2 and s3 are normalized size moments, (n_a/n)^2 + (n_b/n)^2 and
/// (n_a/n)^3 + (n_b/n)^3. With that normalization the closed-form estimator
/// inverts the population moments exactly:
///   m1 = s2 p_in + (1 - s2) p_out
/// and likewise for the wedge and triangle densities m2, m3. Raw counts
/// n_a^2 + n_b^2 would mix O(n^2) quantities with probabilities.
struct EstimatorMoments {
  double s2 = 0.0;
  double s3 = 0.0;
  double m1 = 0.0;  // edge density over ordered pairs i != j
  double m2 = 0.0;  // A_ij A_ik over ordered distinct triples
  double m3 = 0.0;  // A_ij A_ik A_jk over ordered distinct triples
};

struct EstimatedParams {
  double p_in_hat = 0.0;   // clipped to [0, 1]
  double p_out_hat = 0.0;  // clipped to [0, 1]
  double p_in_raw = 0.0;
  double p_out_raw = 0.0;
  double alpha_est = 0.0;
  double denominator = 0.0;
  EstimatorMoments moments;
};

/// m1, m2, m3 of the adjacency matrix (self-loops ignored). m2 uses the
/// wedge identity sum_i d_i (d_i - 1); m3 counts closed ordered triples by
/// neighbour marking. Requires n >= 3. Size moments come from the labels of two-block graphs
/// and are left at zero otherwise.
EstimatorMoments adjacency_moments(const Graph& graph);

/// Plug-in affiliation-model estimator for known block sizes. The two
/// balanced-block and equal-probability directions make the denominator
/// vanish; |denominator| < 1e-12 raises NearSingularEstimatorError.
EstimatedParams estimate(const Graph& graph, std::int64_t n_a,
                         std::int64_t n_b);

/// Same formulas applied to already computed moments.
EstimatedParams estimate_from_moments(const EstimatorMoments& moments);

}  // namespace seedrank
