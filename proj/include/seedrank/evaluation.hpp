#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "seedrank/sbm.hpp"

namespace seedrank {

/// recall[m - 1] is the fraction of the in-class found among the first m
/// returned nodes, m = 1..n.
struct RecallCurve {
  std::vector<std::int64_t> m;
  std::vector<double> recall;

  double at(std::int64_t size) const { return recall.at(size - 1); }
};

/// Per-k empirical quantiles at two levels.
struct QuantileBand {
  double lower_level = 0.0015;
  double upper_level = 0.9985;
  std::vector<double> lower;
  std::vector<double> upper;
};

/// Pearson correlation of two binary labelings (values 0 or 1, encoded as
/// -1/+1), maximized over the global label swap, so the result lies in
/// [0, 1]. A constant prediction gives 0. Throws ValidationError when the
/// lengths differ, a label is not 0/1, or the truth has a single class.
double pearson_correlation(std::span<const int> predicted,
                           std::span<const int> truth);

/// Returned order: seeds first (ascending id), then the rest by descending
/// score, ties by ascending id.
std::vector<NodeId> seeded_order(const Eigen::VectorXd& scores,
                                 std::span<const NodeId> seeds);

/// 1 for the first m nodes of `order`, 0 for the rest.
std::vector<int> top_m_labeling(std::span<const NodeId> order, std::int64_t m);

/// `in_class[v]` marks the true in-class members. The seeds count toward the
/// returned set and toward the in-class total.
RecallCurve recall_curve(const Eigen::VectorXd& scores,
                         std::span<const char> in_class,
                         std::span<const NodeId> seeds);

/// Nearest-rank quantile: the ceil(q N)-th smallest value (1-based, clamped
/// to [1, N]).
double nearest_rank_quantile(std::vector<double> values, double q);

/// `samples` holds one realization per row and one k per column. Needs at
/// least two rows.
QuantileBand quantile_bands(const Eigen::MatrixXd& samples,
                            double lower_level = 0.0015,
                            double upper_level = 0.9985);

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;  // sample standard deviation, 0 for a single value
};

MeanStd mean_std(std::span<const double> values);

}  // namespace seedrank
