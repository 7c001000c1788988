#include "seedrank/discriminant.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "seedrank/errors.hpp"
#include "seedrank/parallel.hpp"
#include "seedrank/rng.hpp"

namespace seedrank {

namespace {

constexpr double kSymmetryTolerance = 1e-10;

void require_square(const Eigen::MatrixXd& m, int K, const char* name) {
  if (m.rows() != K || m.cols() != K) {
    throw ValidationError(std::string("moments: ") + name + " must be K x K");
  }
}

void require_conditioned(const Eigen::MatrixXd& sigma, double cap,
                         const char* name) {
  const double kappa = condition_number(sigma);
  if (!(kappa < cap)) {
    throw DegenerateMomentsError(std::string("moments: condition number of ") +
                                 name + " is " + std::to_string(kappa) +
                                 ", above the cap " + std::to_string(cap));
  }
}

double log_determinant(const Eigen::MatrixXd& sym) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sym,
                                                     Eigen::EigenvaluesOnly);
  const double floor = std::max(sym.trace() * 1e-14, 0.0);
  double total = 0.0;
  for (double v : eig.eigenvalues()) total += std::log(std::max(v, floor));
  return total;
}

}  // namespace

std::string_view to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::kPpr:
      return "ppr";
    case ModelKind::kHeatKernel:
      return "heat_kernel";
    case ModelKind::kGeometric:
      return "geometric";
    case ModelKind::kLinSbmRank:
      return "lin_sbmrank";
    case ModelKind::kQuadSbmRank:
      return "quad_sbmrank";
  }
  return "unknown";
}

ModelKind model_kind_from_string(std::string_view name) {
  for (auto kind : {ModelKind::kPpr, ModelKind::kHeatKernel,
                    ModelKind::kGeometric, ModelKind::kLinSbmRank,
                    ModelKind::kQuadSbmRank}) {
    if (name == to_string(kind)) return kind;
  }
  throw ValidationError("unknown model kind '" + std::string(name) + "'");
}

bool DiscriminantModel::is_linear() const {
  return kind != ModelKind::kQuadSbmRank;
}

// --- Moments ----------------------------------------------------------------

void ClassMoments::validate() const {
  const int K = this->K();
  if (K < 1) throw ValidationError("moments: K must be >= 1");
  if (b.size() != K) throw ValidationError("moments: a and b differ in length");
  require_square(sigma_a, K, "sigma_a");
  require_square(sigma_b, K, "sigma_b");
  for (const auto* sigma : {&sigma_a, &sigma_b}) {
    if ((*sigma - sigma->transpose()).cwiseAbs().maxCoeff() >
        kSymmetryTolerance * std::max(1.0, sigma->cwiseAbs().maxCoeff())) {
      throw ValidationError("moments: covariance must be symmetric");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(*sigma,
                                                       Eigen::EigenvaluesOnly);
    if (eig.eigenvalues().minCoeff() < -1e-10 * std::abs(sigma->trace())) {
      throw ValidationError("moments: covariance must be positive semidefinite");
    }
  }
  if (!(pi_a > 0.0 && pi_a < 1.0)) {
    throw ValidationError("moments: pi_a must lie in (0, 1)");
  }
}

ClassMoments ClassMoments::truncated(int K) const {
  if (K < 1 || K > this->K()) {
    throw ValidationError("moments: cannot truncate to K=" + std::to_string(K));
  }
  ClassMoments out = *this;
  out.a = a.head(K);
  out.b = b.head(K);
  out.sigma_a = sigma_a.topLeftCorner(K, K);
  out.sigma_b = sigma_b.topLeftCorner(K, K);
  return out;
}

Eigen::MatrixXd ClassMoments::pooled_covariance() const {
  if (count_a >= 2 && count_b >= 2) {
    const auto wa = static_cast<double>(count_a - 1);
    const auto wb = static_cast<double>(count_b - 1);
    return (wa * sigma_a + wb * sigma_b) / (wa + wb);
  }
  return 0.5 * (sigma_a + sigma_b);
}

double condition_number(const Eigen::MatrixXd& sym) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sym,
                                                     Eigen::EigenvaluesOnly);
  const double lo = eig.eigenvalues().minCoeff();
  const double hi = eig.eigenvalues().maxCoeff();
  if (!(lo > 0.0)) return std::numeric_limits<double>::infinity();
  return hi / lo;
}

Eigen::MatrixXd stable_inverse(const Eigen::MatrixXd& sym) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sym);
  if (eig.info() != Eigen::Success) {
    throw NumericError("inverse: eigendecomposition failed");
  }
  const double floor = sym.trace() * 1e-14;
  if (!(floor > 0.0)) {
    throw DegenerateMomentsError("inverse: covariance has non-positive trace");
  }
  Eigen::VectorXd inv = eig.eigenvalues().cwiseMax(floor).cwiseInverse();
  Eigen::MatrixXd out =
      eig.eigenvectors() * inv.asDiagonal() * eig.eigenvectors().transpose();
  return 0.5 * (out + out.transpose());
}

// --- Weight vectors -----------------------------------------------------------

namespace {

DiscriminantModel linear_model(ModelKind kind, Eigen::VectorXd w) {
  DiscriminantModel model;
  model.kind = kind;
  model.W = Eigen::MatrixXd::Zero(w.size(), w.size());
  model.w = std::move(w);
  return model;
}

}  // namespace

DiscriminantModel ppr_weights(double alpha, int K) {
  if (!(alpha > -1.0 && alpha < 1.0)) {
    throw ValidationError("ppr: alpha must lie in (-1, 1)");
  }
  if (K < 1) throw ValidationError("ppr: K must be >= 1");
  Eigen::VectorXd w(K);
  double power = 1.0;
  for (int k = 0; k < K; ++k) w[k] = (power *= alpha);
  return linear_model(ModelKind::kPpr, std::move(w));
}

DiscriminantModel heat_kernel_weights(double t, int K) {
  if (!(t > 0.0)) throw ValidationError("heat kernel: t must be positive");
  if (K < 1) throw ValidationError("heat kernel: K must be >= 1");
  Eigen::VectorXd w(K);
  // log(e^{-t} t^k / k!) avoids overflow of t^k and k!.
  for (int k = 1; k <= K; ++k) {
    w[k - 1] = std::exp(-t + k * std::log(t) - std::lgamma(k + 1.0));
  }
  return linear_model(ModelKind::kHeatKernel, std::move(w));
}

DiscriminantModel geometric_model(const Eigen::VectorXd& a,
                                  const Eigen::VectorXd& b) {
  if (a.size() != b.size() || a.size() == 0) {
    throw ValidationError("geometric: centroids must have equal, positive length");
  }
  return linear_model(ModelKind::kGeometric, a - b);
}

DiscriminantModel lin_sbmrank(const ClassMoments& moments, double cond_cap) {
  moments.validate();
  const Eigen::MatrixXd sigma = moments.pooled_covariance();
  require_conditioned(sigma, cond_cap, "pooled sigma");
  return linear_model(ModelKind::kLinSbmRank,
                      stable_inverse(sigma) * (moments.a - moments.b));
}

DiscriminantModel quad_sbmrank(const ClassMoments& moments, double cond_cap) {
  moments.validate();
  require_conditioned(moments.sigma_a, cond_cap, "sigma_a");
  require_conditioned(moments.sigma_b, cond_cap, "sigma_b");
  const Eigen::MatrixXd inv_a = stable_inverse(moments.sigma_a);
  const Eigen::MatrixXd inv_b = stable_inverse(moments.sigma_b);
  DiscriminantModel model;
  model.kind = ModelKind::kQuadSbmRank;
  model.w = inv_a * moments.a - inv_b * moments.b;
  Eigen::MatrixXd W = 0.5 * (inv_b - inv_a);
  model.W = 0.5 * (W + W.transpose());
  model.w0 = -0.5 * (moments.a.dot(inv_a * moments.a) -
                     moments.b.dot(inv_b * moments.b) +
                     log_determinant(moments.sigma_a) -
                     log_determinant(moments.sigma_b)) +
             std::log(moments.pi_a / (1.0 - moments.pi_a));
  return model;
}

Eigen::VectorXd score(const DiscriminantModel& model,
                      const LandingProfile& profile) {
  if (model.K() != profile.K()) {
    throw ValidationError("score: model K=" + std::to_string(model.K()) +
                          " but profile K=" + std::to_string(profile.K()));
  }
  Eigen::VectorXd s = profile.r * model.w;
  if (!model.is_linear()) {
    s += ((profile.r * model.W).array() * profile.r.array()).rowwise().sum().matrix();
  }
  s.array() += model.w0;
  return s;
}

std::vector<NodeId> rank_order(const Eigen::VectorXd& scores) {
  std::vector<NodeId> order(static_cast<std::size_t>(scores.size()));
  std::iota(order.begin(), order.end(), NodeId{0});
  std::stable_sort(order.begin(), order.end(), [&](NodeId x, NodeId y) {
    return scores[x] > scores[y];
  });
  return order;
}

// --- Moment estimation -------------------------------------------------------

MomentAccumulator::MomentAccumulator(int K)
    : mean_(Eigen::VectorXd::Zero(K)), comoment_(Eigen::MatrixXd::Zero(K, K)) {}

void MomentAccumulator::add(const Eigen::Ref<const Eigen::VectorXd>& x) {
  ++count_;
  const Eigen::VectorXd delta = x - mean_;
  mean_ += delta / static_cast<double>(count_);
  comoment_.noalias() += delta * (x - mean_).transpose();
}

void MomentAccumulator::merge(const MomentAccumulator& other) {
  if (other.count_ == 0) return;
  if (count_ == 0) {
    *this = other;
    return;
  }
  const auto n1 = static_cast<double>(count_);
  const auto n2 = static_cast<double>(other.count_);
  const Eigen::VectorXd delta = other.mean_ - mean_;
  const double total = n1 + n2;
  mean_ += delta * (n2 / total);
  comoment_ += other.comoment_ + delta * delta.transpose() * (n1 * n2 / total);
  count_ += other.count_;
}

Eigen::MatrixXd MomentAccumulator::covariance() const {
  if (count_ < 2) {
    throw DegenerateMomentsError("moments: fewer than two samples in a class");
  }
  Eigen::MatrixXd cov = comoment_ / static_cast<double>(count_ - 1);
  return 0.5 * (cov + cov.transpose());
}

ClassMoments estimate_moments(const MomentEstimationConfig& config) {
  if (config.realizations < 2) {
    throw ValidationError("moments: need at least two realizations");
  }
  if (config.seeds_per_graph < 1) {
    throw ValidationError("moments: seeds_per_graph must be >= 1");
  }
  if (config.K_max < 1) throw ValidationError("moments: K_max must be >= 1");
  config.params.validate();
  config.split.validate(config.params.num_blocks());
  const int K = config.K_max;

  struct Partial {
    MomentAccumulator in_class;
    MomentAccumulator out_class;
  };
  std::vector<Partial> partials(static_cast<std::size_t>(config.realizations),
                                Partial{MomentAccumulator(K), MomentAccumulator(K)});
  parallel_for(partials.size(), config.jobs, [&](std::size_t m) {
    Rng rng = Rng::stream(config.rng_seed, m);
    const Graph graph = generate(config.params, rng.next());
    std::vector<NodeId> members;
    for (std::int64_t v = 0; v < graph.num_nodes(); ++v) {
      if (config.split.contains(graph.blocks()[v])) {
        members.push_back(static_cast<NodeId>(v));
      }
    }
    auto& part = partials[m];
    for (int s = 0; s < config.seeds_per_graph; ++s) {
      const NodeId seed = members[rng.below(members.size())];
      const auto profile = landing_probabilities(graph, WalkConfig{{seed}, K});
      for (std::int64_t v = 0; v < graph.num_nodes(); ++v) {
        if (static_cast<NodeId>(v) == seed) continue;
        auto& acc = config.split.contains(graph.blocks()[v]) ? part.in_class
                                                             : part.out_class;
        acc.add(profile.r.row(v).transpose());
      }
    }
  });

  MomentAccumulator in_class(K);
  MomentAccumulator out_class(K);
  for (const auto& part : partials) {
    in_class.merge(part.in_class);
    out_class.merge(part.out_class);
  }

  ClassMoments full;
  full.a = in_class.mean();
  full.b = out_class.mean();
  full.sigma_a = in_class.covariance();
  full.sigma_b = out_class.covariance();
  full.count_a = in_class.count();
  full.count_b = out_class.count();
  const auto sizes = config.params.block_sizes();
  double n_in = 0.0;
  for (int b : config.split.in_blocks) n_in += static_cast<double>(sizes[b]);
  full.pi_a = n_in / static_cast<double>(config.params.n);

  for (int k = K; k >= 1; --k) {
    const Eigen::MatrixXd sa = full.sigma_a.topLeftCorner(k, k);
    const Eigen::MatrixXd sb = full.sigma_b.topLeftCorner(k, k);
    if (condition_number(sa) < config.cond_cap &&
        condition_number(sb) < config.cond_cap) {
      return full.truncated(k);
    }
  }
  throw DegenerateMomentsError(
      "moments: condition cap unreachable even at K=1");
}

}  // namespace seedrank
