#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "seedrank/sbm.hpp"
#include "seedrank/walk.hpp"

namespace seedrank {

enum class ModelKind { kPpr, kHeatKernel, kGeometric, kLinSbmRank, kQuadSbmRank };

std::string_view to_string(ModelKind kind);
ModelKind model_kind_from_string(std::string_view name);

/// g(r) = w^T r + r^T W r + w0. Linear kinds keep W == 0.
struct DiscriminantModel {
  ModelKind kind = ModelKind::kPpr;
  Eigen::VectorXd w;
  Eigen::MatrixXd W;
  double w0 = 0.0;

  int K() const { return static_cast<int>(w.size()); }
  bool is_linear() const;
};

/// First two moments of the in-class (a) and out-class (b) point clouds.
/// The counts feed the pooled covariance; zero means unknown, in which case
/// the two covariances are weighted equally.
struct ClassMoments {
  Eigen::VectorXd a;
  Eigen::VectorXd b;
  Eigen::MatrixXd sigma_a;
  Eigen::MatrixXd sigma_b;
  double pi_a = 0.5;
  std::int64_t count_a = 0;
  std::int64_t count_b = 0;

  int K() const { return static_cast<int>(a.size()); }
  void validate() const;
  /// Leading K x K block / first K entries.
  ClassMoments truncated(int K) const;
  Eigen::MatrixXd pooled_covariance() const;
};

constexpr double kDefaultConditionCap = 1e10;

/// kappa = lambda_max / lambda_min of a symmetric matrix; +inf when the
/// smallest eigenvalue is not positive.
double condition_number(const Eigen::MatrixXd& sym);

/// Inverse through a symmetric eigendecomposition, with eigenvalues clipped
/// from below at trace * 1e-14.
Eigen::MatrixXd stable_inverse(const Eigen::MatrixXd& sym);

DiscriminantModel ppr_weights(double alpha, int K);
/// w_k = e^{-t} t^k / k!
DiscriminantModel heat_kernel_weights(double t, int K);
DiscriminantModel geometric_model(const Eigen::VectorXd& a,
                                  const Eigen::VectorXd& b);
/// w = Sigma^{-1} (a - b) with Sigma the pooled covariance. Throws
/// DegenerateMomentsError when kappa(Sigma) >= cond_cap.
DiscriminantModel lin_sbmrank(const ClassMoments& moments,
                              double cond_cap = kDefaultConditionCap);
/// w = Sa^{-1} a - Sb^{-1} b, W = (Sb^{-1} - Sa^{-1}) / 2,
/// w0 = -(a'Sa^{-1}a - b'Sb^{-1}b + ln|Sa|/|Sb|)/2 + ln(pi_a / (1 - pi_a)).
DiscriminantModel quad_sbmrank(const ClassMoments& moments,
                               double cond_cap = kDefaultConditionCap);

/// score(v) = w^T r^v + r^v^T W r^v + w0.
Eigen::VectorXd score(const DiscriminantModel& model,
                      const LandingProfile& profile);

/// Node ids ordered best first: descending score, ties by ascending id.
std::vector<NodeId> rank_order(const Eigen::VectorXd& scores);

struct MomentEstimationConfig {
  SbmParams params;
  ClassSplit split;
  int realizations = 100;
  int seeds_per_graph = 1;
  int K_max = 10;
  double cond_cap = kDefaultConditionCap;
  std::uint64_t rng_seed = 0;
  int jobs = 1;
};

/// Accumulates sample mean and co-moment of K-vectors; merging is
/// associative (Chan et al. pairwise update).
class MomentAccumulator {
 public:
  explicit MomentAccumulator(int K = 0);
  void add(const Eigen::Ref<const Eigen::VectorXd>& x);
  void merge(const MomentAccumulator& other);
  std::int64_t count() const { return count_; }
  const Eigen::VectorXd& mean() const { return mean_; }
  /// Unbiased sample covariance (divides by count - 1).
  Eigen::MatrixXd covariance() const;

 private:
  std::int64_t count_ = 0;
  Eigen::VectorXd mean_;
  Eigen::MatrixXd comoment_;
};

/// Simulates `realizations` graphs of the model, seeds each from the
/// in-class, and pools the non-seed profile rows of each class. Returns the
/// moments truncated to the largest K <= K_max whose two covariances both
/// have condition number below cond_cap.
ClassMoments estimate_moments(const MomentEstimationConfig& config);

}  // namespace seedrank
