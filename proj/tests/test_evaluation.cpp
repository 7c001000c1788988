#include <algorithm>
#include <cmath>
#include <numeric>

#include "doctest.h"
#include "seedrank/errors.hpp"
#include "seedrank/evaluation.hpp"
#include "seedrank/rng.hpp"

using namespace seedrank;

namespace {

double pearson_oracle(const std::vector<int>& x, const std::vector<int>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += 2 * x[i] - 1;
    my += 2 * y[i] - 1;
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = 2 * x[i] - 1 - mx, dy = 2 * y[i] - 1 - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0 || syy == 0) return 0.0;
  return std::abs(sxy / std::sqrt(sxx * syy));
}

std::vector<int> balanced(int n) {
  std::vector<int> t(static_cast<std::size_t>(n), 0);
  std::fill(t.begin(), t.begin() + n / 2, 1);
  return t;
}

}  // namespace

TEST_CASE("pearson examples") {
  const auto truth = balanced(10);
  CHECK(pearson_correlation(truth, truth) == doctest::Approx(1.0));
  std::vector<int> flipped(truth.size());
  std::transform(truth.begin(), truth.end(), flipped.begin(), [](int v) { return 1 - v; });
  CHECK(pearson_correlation(flipped, truth) == doctest::Approx(1.0));
  CHECK(pearson_correlation(std::vector<int>(10, 1), truth) == 0.0);
  CHECK_THROWS_AS(pearson_correlation(truth, std::vector<int>(10, 0)), ValidationError);
  CHECK_THROWS_AS(pearson_correlation(std::vector<int>(9, 0), truth), ValidationError);
  CHECK_THROWS_AS(pearson_correlation(std::vector<int>(10, 2), truth), ValidationError);
}

TEST_CASE("pearson agrees with the direct formula and stays in [0, 1]") {
  Rng rng(10);
  for (int trial = 0; trial < 500; ++trial) {
    const auto n = 4 + static_cast<int>(rng.below(60));
    std::vector<int> x(static_cast<std::size_t>(n)), y(static_cast<std::size_t>(n));
    for (auto& v : x) v = static_cast<int>(rng.below(2));
    for (auto& v : y) v = static_cast<int>(rng.below(2));
    y[0] = 0;
    y[1] = 1;
    const double r = pearson_correlation(x, y);
    CHECK(r == doctest::Approx(pearson_oracle(x, y)).epsilon(1e-12));
    CHECK(r >= 0.0);
    CHECK(r <= 1.0 + 1e-12);
    const bool same = x == y;
    const bool swapped = std::equal(x.begin(), x.end(), y.begin(), [](int a, int b) { return a != b; });
    CHECK((std::abs(r - 1.0) < 1e-12) == (same || swapped));
  }
}

TEST_CASE("random predictions have near-zero mean correlation") {
  Rng rng(11);
  const auto truth = balanced(128);
  double total = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<int> x(128);
    for (auto& v : x) v = static_cast<int>(rng.below(2));
    total += pearson_correlation(x, truth);
  }
  CHECK(total / 1000 < 0.1);
  // E|r| ~ sqrt(2 / (pi n)) = 0.0705 under the null.
  CHECK(total / 1000 == doctest::Approx(std::sqrt(2 / (M_PI * 128))).epsilon(0.1));
}

TEST_CASE("seeded order and top-m labeling") {
  const Eigen::VectorXd s = (Eigen::VectorXd(6) << 0.1, 0.9, 0.5, 0.9, 0.0, 0.3).finished();
  const std::vector<NodeId> seeds{4};
  const auto order = seeded_order(s, seeds);
  CHECK(order == std::vector<NodeId>{4, 1, 3, 2, 5, 0});
  CHECK(top_m_labeling(order, 2) == std::vector<int>{0, 1, 0, 0, 1, 0});
}

TEST_CASE("recall curves") {
  std::vector<char> in(10, 0);
  std::fill(in.begin(), in.begin() + 4, 1);
  Eigen::VectorXd oracle(10);
  for (int v = 0; v < 10; ++v) oracle[v] = in[v];
  const std::vector<NodeId> seeds{2};
  const auto perfect = recall_curve(oracle, in, seeds);
  CHECK(perfect.at(4) == 1.0);
  CHECK(perfect.at(1) == 0.25);
  CHECK(perfect.m.front() == 1);
  CHECK(perfect.m.back() == 10);

  // Constant scores: seed 7 first, then ids 0, 1, ...
  const auto flat = recall_curve(Eigen::VectorXd::Zero(10), in, std::vector<NodeId>{7});
  const double expected[10] = {0, 0.25, 0.5, 0.75, 1, 1, 1, 1, 1, 1};
  for (int m = 1; m <= 10; ++m) CHECK(flat.at(m) == expected[m - 1]);

  Rng rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    Eigen::VectorXd s(10);
    for (int v = 0; v < 10; ++v) s[v] = rng.uniform();
    const auto c = recall_curve(s, in, std::vector<NodeId>{static_cast<NodeId>(rng.below(4))});
    CHECK(std::is_sorted(c.recall.begin(), c.recall.end()));
    CHECK(c.recall.back() == 1.0);
  }
}

TEST_CASE("nearest-rank quantiles") {
  std::vector<double> v(1000);
  std::iota(v.begin(), v.end(), 1.0);
  CHECK(nearest_rank_quantile(v, 0.5) == 500);
  CHECK(nearest_rank_quantile(v, 0.0015) == 2);
  CHECK(nearest_rank_quantile(v, 0.9985) == 999);
  CHECK(nearest_rank_quantile(v, 0.0) == 1);
  CHECK(nearest_rank_quantile(v, 1.0) == 1000);
  CHECK(nearest_rank_quantile({3, 1, 2}, 0.5) == 2);
}

TEST_CASE("quantile bands") {
  const Eigen::MatrixXd same = Eigen::MatrixXd::Constant(5, 3, 0.25);
  const auto flat = quantile_bands(same);
  for (int k = 0; k < 3; ++k) {
    CHECK(flat.lower[k] == 0.25);
    CHECK(flat.upper[k] == 0.25);
  }
  Rng rng(13);
  Eigen::MatrixXd samples(200, 4);
  for (int i = 0; i < 200; ++i) {
    for (int k = 0; k < 4; ++k) samples(i, k) = rng.uniform();
  }
  const auto wide = quantile_bands(samples, 0.0015, 0.9985);
  const auto narrow = quantile_bands(samples, 0.05, 0.95);
  for (int k = 0; k < 4; ++k) {
    CHECK(wide.lower[k] <= narrow.lower[k]);
    CHECK(narrow.lower[k] <= narrow.upper[k]);
    CHECK(narrow.upper[k] <= wide.upper[k]);
  }
  CHECK_THROWS_AS(quantile_bands(Eigen::MatrixXd::Zero(1, 3)), ValidationError);
}

TEST_CASE("mean and sample standard deviation") {
  const std::vector<double> v{2, 4, 4, 4, 5, 5, 7, 9};
  const auto ms = mean_std(v);
  CHECK(ms.mean == 5.0);
  CHECK(ms.std == doctest::Approx(std::sqrt(32.0 / 7)));
  CHECK(mean_std(std::vector<double>{3.0}).std == 0.0);
}
