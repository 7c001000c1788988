#include <algorithm>
#include <cmath>
#include <numeric>

#include "doctest.h"
#include "seedrank/errors.hpp"
#include "seedrank/estimator.hpp"
#include "support.hpp"

using namespace seedrank;

namespace {

// Direct sums over ordered distinct index tuples.
EstimatorMoments brute_force(const Graph& g) {
  const auto A = testing::adjacency(g);
  const auto n = static_cast<std::size_t>(g.num_nodes());
  double e = 0, w = 0, t = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      e += A[i][j];
      for (std::size_t k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        w += A[i][j] * A[i][k];
        t += A[i][j] * A[i][k] * A[j][k];
      }
    }
  }
  const double nd = static_cast<double>(n);
  EstimatorMoments m;
  m.m1 = e / (nd * (nd - 1));
  m.m2 = w / (nd * (nd - 1) * (nd - 2));
  m.m3 = t / (nd * (nd - 1) * (nd - 2));
  return m;
}

// Population moments of the affiliation model with block fractions (x, 1-x).
EstimatorMoments population(double x, double p_in, double p_out) {
  const double f[2] = {x, 1 - x};
  auto p = [&](int u, int v) { return u == v ? p_in : p_out; };
  EstimatorMoments m;
  m.s2 = x * x + (1 - x) * (1 - x);
  m.s3 = x * x * x + (1 - x) * (1 - x) * (1 - x);
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      m.m1 += f[a] * f[b] * p(a, b);
      for (int c = 0; c < 2; ++c) {
        m.m2 += f[a] * f[b] * f[c] * p(a, b) * p(a, c);
        m.m3 += f[a] * f[b] * f[c] * p(a, b) * p(a, c) * p(b, c);
      }
    }
  }
  return m;
}

std::vector<int> two_blocks(std::int64_t n_a, std::int64_t n) {
  std::vector<int> blocks(static_cast<std::size_t>(n), 1);
  std::fill(blocks.begin(), blocks.begin() + n_a, 0);
  return blocks;
}

}  // namespace

TEST_CASE("empty and complete graphs") {
  const Graph empty = testing::undirected(6, {}, two_blocks(2, 6));
  const auto e = adjacency_moments(empty);
  CHECK(e.m1 == 0.0);
  CHECK(e.m2 == 0.0);
  CHECK(e.m3 == 0.0);
  std::vector<std::pair<NodeId, NodeId>> all;
  for (NodeId u = 0; u < 6; ++u) {
    for (NodeId v = u + 1; v < 6; ++v) all.emplace_back(u, v);
  }
  all.emplace_back(2, 2);  // self-loops are ignored
  const auto c = adjacency_moments(testing::undirected(6, all, two_blocks(2, 6)));
  CHECK(c.m1 == 1.0);
  CHECK(c.m2 == 1.0);
  CHECK(c.m3 == 1.0);
  CHECK(c.s2 == doctest::Approx(1.0 / 9 + 4.0 / 9));
  CHECK_THROWS_AS(adjacency_moments(testing::undirected(2, {{0, 1}})), ValidationError);
}

TEST_CASE("hand-built five-node graph") {
  // Triangle 0-1-2 with a tail 2-3-4.
  const Graph g = testing::undirected(5, {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {3, 4}});
  const auto m = adjacency_moments(g);
  CHECK(m.m1 == doctest::Approx(10.0 / 20));
  // Ordered wedges: sum_i d_i (d_i - 1) with degrees 2, 2, 3, 2, 1.
  CHECK(m.m2 == doctest::Approx(12.0 / 60));
  // One triangle gives 6 ordered closed triples.
  CHECK(m.m3 == doctest::Approx(6.0 / 60));
}

TEST_CASE("moments match the O(n^3) oracle for n <= 30") {
  Rng rng(19);
  for (int trial = 0; trial < 60; ++trial) {
    const auto n = static_cast<std::int64_t>(3 + rng.below(28));
    const Graph g = testing::random_graph(n, 0.05 + 0.9 * rng.uniform(), rng);
    const auto fast = adjacency_moments(g);
    const auto slow = brute_force(g);
    CHECK(fast.m1 == doctest::Approx(slow.m1).epsilon(1e-14));
    CHECK(fast.m2 == doctest::Approx(slow.m2).epsilon(1e-14));
    CHECK(fast.m3 == doctest::Approx(slow.m3).epsilon(1e-14));
  }
}

TEST_CASE("normalized size moments invert population moments exactly") {
  for (double x : {0.1, 0.25, 0.3, 0.7}) {
    for (auto [p_in, p_out] : {std::pair{0.3, 0.2}, {0.5, 0.05}, {0.1, 0.4}}) {
      const auto est = estimate_from_moments(population(x, p_in, p_out));
      CHECK(est.p_in_raw == doctest::Approx(p_in).epsilon(1e-9));
      CHECK(est.p_out_raw == doctest::Approx(p_out).epsilon(1e-9));
      CHECK(est.alpha_est == doctest::Approx((p_in - p_out) / (p_in + p_out)).epsilon(1e-9));
    }
  }
}

TEST_CASE("degenerate directions raise a near-singular error") {
  for (double x : {0.25, 0.5}) {
    try {
      estimate_from_moments(population(x, 0.2, 0.2));
      FAIL("expected NearSingularEstimatorError");
    } catch (const NearSingularEstimatorError& e) {
      CHECK(std::abs(e.denominator()) < 1e-12);
    }
  }
  CHECK_THROWS_AS(estimate_from_moments(population(0.5, 0.3, 0.2)), NearSingularEstimatorError);
  // On sampled Erdos-Renyi graphs the denominator shrinks with n.
  auto median_denominator = [](std::int64_t n) {
    std::vector<double> values;
    for (int t = 0; t < 9; ++t) {
      const Graph g = generate(affiliation_to_sbm({n / 4, n - n / 4, 0.2, 0.2}),
                               Rng::stream(2, static_cast<std::uint64_t>(n), t).next());
      const auto m = adjacency_moments(g);
      values.push_back(std::abs(m.m1 * m.m1 - m.m2));
    }
    std::nth_element(values.begin(), values.begin() + 4, values.end());
    return values[4];
  };
  CHECK(median_denominator(512) < median_denominator(64));
}

TEST_CASE("estimates clip to [0, 1] but keep raw values") {
  const Graph g = generate(affiliation_to_sbm({8, 24, 0.05, 0.04}), 5);
  try {
    const auto est = estimate(g, 8, 24);
    CHECK(est.p_in_hat >= 0.0);
    CHECK(est.p_in_hat <= 1.0);
    CHECK(est.p_out_hat >= 0.0);
    CHECK(est.p_out_hat <= 1.0);
    CHECK(est.p_in_hat == std::clamp(est.p_in_raw, 0.0, 1.0));
  } catch (const NearSingularEstimatorError&) {
    // A tiny sparse sample can land on the degenerate direction.
  }
  CHECK_THROWS_AS(estimate(g, 8, 20), ValidationError);
}

TEST_CASE("estimates are invariant to node relabelling") {
  const Graph g = generate(affiliation_to_sbm({64, 192, 0.3, 0.2}), 8);
  std::vector<NodeId> perm(256);
  std::iota(perm.begin(), perm.end(), NodeId{0});
  Rng rng(1);
  rng.shuffle(std::span<NodeId>(perm));
  const auto a = estimate(g, 64, 192);
  const auto b = estimate(g.permuted(perm), 64, 192);
  CHECK(a.p_in_raw == doctest::Approx(b.p_in_raw).epsilon(1e-12));
  CHECK(a.p_out_raw == doctest::Approx(b.p_out_raw).epsilon(1e-12));
  CHECK(a.moments.m3 == b.moments.m3);
}

TEST_CASE("estimates are close at n = 1024") {
  double err_in = 0, err_out = 0;
  const int trials = 10;
  for (int t = 0; t < trials; ++t) {
    const Graph g = generate(affiliation_to_sbm({256, 768, 0.3, 0.2}), Rng::stream(23, t).next());
    const auto est = estimate(g, 256, 768);
    err_in += std::abs(est.p_in_hat - 0.3);
    err_out += std::abs(est.p_out_hat - 0.2);
  }
  CHECK(err_in / trials < 0.02);
  CHECK(err_out / trials < 0.02);
}
