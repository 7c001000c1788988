#include "seedrank/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "seedrank/discriminant.hpp"
#include "seedrank/errors.hpp"

namespace seedrank {

double pearson_correlation(std::span<const int> predicted,
                           std::span<const int> truth) {
  if (predicted.size() != truth.size()) {
    throw ValidationError("pearson: labelings differ in length");
  }
  const auto n = static_cast<double>(truth.size());
  double sx = 0.0, sy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if ((predicted[i] != 0 && predicted[i] != 1) ||
        (truth[i] != 0 && truth[i] != 1)) {
      throw ValidationError("pearson: labels must be 0 or 1");
    }
    const double x = predicted[i] ? 1.0 : -1.0;
    const double y = truth[i] ? 1.0 : -1.0;
    sx += x;
    sy += y;
    sxy += x * y;
  }
  // With x, y in {-1, +1}, sum x^2 = sum y^2 = n.
  const double var_y = n - sy * sy / n;
  if (truth.empty() || var_y <= 0.0) {
    throw ValidationError("pearson: true labeling must contain both classes");
  }
  const double var_x = n - sx * sx / n;
  if (var_x <= 0.0) return 0.0;
  const double r = (sxy - sx * sy / n) / std::sqrt(var_x * var_y);
  return std::min(1.0, std::abs(r));
}

std::vector<NodeId> seeded_order(const Eigen::VectorXd& scores,
                                 std::span<const NodeId> seeds) {
  const auto n = static_cast<std::size_t>(scores.size());
  std::vector<char> is_seed(n, 0);
  for (NodeId s : seeds) {
    if (s >= n) throw ValidationError("recall: seed out of range");
    is_seed[s] = 1;
  }
  std::vector<NodeId> order;
  order.reserve(n);
  for (std::size_t v = 0; v < n; ++v) {
    if (is_seed[v]) order.push_back(static_cast<NodeId>(v));
  }
  for (NodeId v : rank_order(scores)) {
    if (!is_seed[v]) order.push_back(v);
  }
  return order;
}

std::vector<int> top_m_labeling(std::span<const NodeId> order, std::int64_t m) {
  std::vector<int> labels(order.size(), 0);
  const auto top = std::min<std::size_t>(order.size(),
                                         static_cast<std::size_t>(std::max<std::int64_t>(m, 0)));
  for (std::size_t i = 0; i < top; ++i) labels[order[i]] = 1;
  return labels;
}

RecallCurve recall_curve(const Eigen::VectorXd& scores,
                         std::span<const char> in_class,
                         std::span<const NodeId> seeds) {
  if (in_class.size() != static_cast<std::size_t>(scores.size())) {
    throw ValidationError("recall: scores and labels differ in length");
  }
  const auto total = std::count(in_class.begin(), in_class.end(), 1);
  if (total == 0) throw ValidationError("recall: in-class is empty");
  const std::vector<NodeId> order = seeded_order(scores, seeds);
  RecallCurve curve;
  curve.m.resize(order.size());
  curve.recall.resize(order.size());
  std::int64_t found = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    found += in_class[order[i]] ? 1 : 0;
    curve.m[i] = static_cast<std::int64_t>(i) + 1;
    curve.recall[i] = static_cast<double>(found) / static_cast<double>(total);
  }
  return curve;
}

double nearest_rank_quantile(std::vector<double> values, double q) {
  if (values.empty()) throw ValidationError("quantile: no values");
  if (!(q >= 0.0 && q <= 1.0)) throw ValidationError("quantile: level not in [0, 1]");
  const auto count = static_cast<std::int64_t>(values.size());
  // The small slack keeps q N = 500.0000000001 from rounding up a rank.
  auto rank = static_cast<std::int64_t>(
      std::ceil(q * static_cast<double>(count) - 1e-9));
  rank = std::clamp<std::int64_t>(rank, 1, count);
  std::nth_element(values.begin(), values.begin() + (rank - 1), values.end());
  return values[static_cast<std::size_t>(rank - 1)];
}

QuantileBand quantile_bands(const Eigen::MatrixXd& samples, double lower_level,
                            double upper_level) {
  if (samples.rows() < 2) throw ValidationError("quantile bands: need >= 2 samples");
  if (!(lower_level <= upper_level)) {
    throw ValidationError("quantile bands: lower level above upper level");
  }
  QuantileBand band;
  band.lower_level = lower_level;
  band.upper_level = upper_level;
  for (Eigen::Index k = 0; k < samples.cols(); ++k) {
    std::vector<double> column(samples.col(k).data(),
                               samples.col(k).data() + samples.rows());
    band.lower.push_back(nearest_rank_quantile(column, lower_level));
    band.upper.push_back(nearest_rank_quantile(std::move(column), upper_level));
  }
  return band;
}

MeanStd mean_std(std::span<const double> values) {
  MeanStd out;
  if (values.empty()) return out;
  out.mean = std::accumulate(values.begin(), values.end(), 0.0) /
             static_cast<double>(values.size());
  if (values.size() < 2) return out;
  double ss = 0.0;
  for (double v : values) ss += (v - out.mean) * (v - out.mean);
  out.std = std::sqrt(ss / static_cast<double>(values.size() - 1));
  return out;
}

}  // namespace seedrank
