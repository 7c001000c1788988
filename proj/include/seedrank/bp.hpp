#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "seedrank/rng.hpp"
#include "seedrank/sbm.hpp"

namespace seedrank {

/// Known model for sparse BP: c_sr = n p_sr with n the total node count,
/// class proportions pi, and stopping rules.
struct BpParams {
  int C = 2;
  Eigen::MatrixXd c;
  Eigen::VectorXd pi;
  double tol = 1e-6;
  int max_iters = 1000;
  /// Refresh xi after every node update (default) instead of once per
  /// sweep. The per-sweep field lets one asynchronous sweep cascade into the
  /// all-one-class fixed point on dense graphs.
  bool incremental_field = true;
  /// Free messages start at pi + init_noise * (u - pi) for a uniform simplex
  /// draw u; 1 gives plain uniform draws.
  double init_noise = 1.0;

  static BpParams from_sbm(const SbmParams& params);
  void validate() const;
};

/// Messages live on CSR slots: slot e of row i (neighbour j) holds
/// psi^{i->j}, C values starting at messages[e * C]. `reverse[e]` is the
/// slot of j->i.
struct BpState {
  int C = 0;
  std::vector<double> messages;
  std::vector<std::uint64_t> reverse;
  Eigen::MatrixXd beliefs;  // n x C
  Eigen::VectorXd log_xi;   // log xi_s
  std::vector<char> clamped;
  std::vector<NodeId> order;
  int sweeps = 0;

  Eigen::VectorXd xi() const { return log_xi.array().exp(); }
};

struct BpResult {
  Eigen::MatrixXd beliefs;
  std::vector<int> labeling;  // argmax class, ties to the lowest id
  bool converged = false;
  int sweeps = 0;
  double max_delta = 0.0;
};

/// Seeds are clamped to the indicator of `seed_class`, including their
/// outgoing messages. Other beliefs start at the class proportions corrected
/// for the seeds, (n pi_s - |S|) / (n - |S|) for the seed class and
/// n pi_t / (n - |S|) otherwise. Free messages are uniform on the simplex.
/// The update order is one random node permutation drawn here.
BpState bp_init(const Graph& graph, const BpParams& params,
                const std::vector<NodeId>& seeds, int seed_class,
                std::uint64_t rng_seed);

/// One asynchronous sweep: xi from the current beliefs, then every free node
/// in the stored order recomputes all of its outgoing messages and its belief
/// from the latest incoming messages. Returns the largest message change.
double bp_sweep(BpState& state, const Graph& graph, const BpParams& params);

BpResult bp_run(const Graph& graph, const BpParams& params,
                const std::vector<NodeId>& seeds, int seed_class,
                std::uint64_t rng_seed);

std::vector<int> argmax_labels(const Eigen::MatrixXd& beliefs);

}  // namespace seedrank
