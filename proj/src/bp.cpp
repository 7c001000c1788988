#include "seedrank/bp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "seedrank/errors.hpp"

namespace seedrank {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

Eigen::VectorXd compute_log_xi(const BpState& state, const BpParams& params) {
  const Eigen::VectorXd total_belief = state.beliefs.colwise().sum().transpose();
  const auto n = static_cast<double>(state.beliefs.rows());
  Eigen::VectorXd field = params.c * total_belief / n;
  return params.pi.array().log() - field.array();
}

// Exponentiates and normalizes a log-vector in place; false if it has no
// finite mass.
bool normalize_log(double* values, int C) {
  double top = kNegInf;
  for (int s = 0; s < C; ++s) {
    if (std::isnan(values[s])) return false;
    top = std::max(top, values[s]);
  }
  if (!std::isfinite(top)) return false;
  double total = 0.0;
  for (int s = 0; s < C; ++s) total += (values[s] = std::exp(values[s] - top));
  for (int s = 0; s < C; ++s) values[s] /= total;
  return true;
}

}  // namespace

BpParams BpParams::from_sbm(const SbmParams& params) {
  params.validate();
  BpParams bp;
  bp.C = params.num_blocks();
  bp.c = static_cast<double>(params.n) * params.P;
  bp.pi = Eigen::Map<const Eigen::VectorXd>(params.pi.data(),
                                            static_cast<Eigen::Index>(params.pi.size()));
  return bp;
}

void BpParams::validate() const {
  if (C < 1) throw ValidationError("bp: C must be >= 1");
  if (c.rows() != C || c.cols() != C) throw ValidationError("bp: c must be C x C");
  if ((c.array() < 0.0).any()) throw ValidationError("bp: c must be >= 0");
  if (pi.size() != C || (pi.array() <= 0.0).any() ||
      std::abs(pi.sum() - 1.0) > 1e-9) {
    throw ValidationError("bp: pi must be C positive proportions summing to 1");
  }
  if (!(tol > 0.0)) throw ValidationError("bp: tol must be positive");
  if (max_iters < 1) throw ValidationError("bp: max_iters must be >= 1");
  if (!(init_noise >= 0.0 && init_noise <= 1.0)) {
    throw ValidationError("bp: init_noise must lie in [0, 1]");
  }
}

BpState bp_init(const Graph& graph, const BpParams& params,
                const std::vector<NodeId>& seeds, int seed_class,
                std::uint64_t rng_seed) {
  params.validate();
  if (graph.directed()) {
    throw ValidationError("bp: belief propagation needs an undirected graph");
  }
  if ((params.c - params.c.transpose()).cwiseAbs().maxCoeff() > 1e-9) {
    throw ValidationError("bp: c must be symmetric for undirected graphs");
  }
  const int C = params.C;
  if (seed_class < 0 || seed_class >= C) {
    throw ValidationError("bp: seed class out of range");
  }
  const std::int64_t n = graph.num_nodes();
  BpState state;
  state.C = C;
  state.clamped.assign(static_cast<std::size_t>(n), 0);
  for (NodeId s : seeds) {
    if (s >= n) throw ValidationError("bp: seed " + std::to_string(s) + " invalid");
    state.clamped[s] = 1;
  }
  const auto num_seeds = static_cast<double>(
      std::count(state.clamped.begin(), state.clamped.end(), 1));
  const auto nd = static_cast<double>(n);
  if (num_seeds >= nd * params.pi[seed_class]) {
    throw ValidationError("bp: seed set does not fit in the seed class");
  }

  state.beliefs.resize(n, C);
  for (std::int64_t i = 0; i < n; ++i) {
    for (int s = 0; s < C; ++s) {
      if (state.clamped[i]) {
        state.beliefs(i, s) = s == seed_class ? 1.0 : 0.0;
      } else {
        const double mass = nd * params.pi[s] - (s == seed_class ? num_seeds : 0.0);
        state.beliefs(i, s) = mass / (nd - num_seeds);
      }
    }
  }

  const auto offsets = graph.offsets();
  const auto targets = graph.targets();
  state.reverse.resize(targets.size());
  for (std::int64_t i = 0; i < n; ++i) {
    for (auto e = offsets[i]; e < offsets[i + 1]; ++e) {
      auto row = graph.out_neighbors(targets[e]);
      auto it = std::lower_bound(row.begin(), row.end(), static_cast<NodeId>(i));
      state.reverse[e] = offsets[targets[e]] +
                         static_cast<std::uint64_t>(it - row.begin());
    }
  }

  Rng rng(rng_seed);
  state.messages.assign(targets.size() * static_cast<std::size_t>(C), 0.0);
  for (std::int64_t i = 0; i < n; ++i) {
    for (auto e = offsets[i]; e < offsets[i + 1]; ++e) {
      double* m = &state.messages[e * C];
      if (state.clamped[i]) {
        m[seed_class] = 1.0;
        continue;
      }
      double total = 0.0;
      for (int s = 0; s < C; ++s) total += (m[s] = rng.uniform());
      for (int s = 0; s < C; ++s) {
        const double u = total > 0.0 ? m[s] / total : 1.0 / C;
        m[s] = params.pi[s] + params.init_noise * (u - params.pi[s]);
      }
    }
  }

  state.log_xi = compute_log_xi(state, params);
  state.order.resize(static_cast<std::size_t>(n));
  std::iota(state.order.begin(), state.order.end(), NodeId{0});
  rng.shuffle(std::span<NodeId>(state.order));
  return state;
}

double bp_sweep(BpState& state, const Graph& graph, const BpParams& params) {
  const int C = state.C;
  const auto offsets = graph.offsets();
  const auto targets = graph.targets();
  ++state.sweeps;
  state.log_xi = compute_log_xi(state, params);

  auto fail = [&](NodeId i) {
    throw NumericError("bp: non-finite value at node " + std::to_string(i) +
                       " in sweep " + std::to_string(state.sweeps));
  };

  const auto n = static_cast<double>(state.beliefs.rows());
  Eigen::VectorXd belief_total = state.beliefs.colwise().sum().transpose();
  const Eigen::VectorXd log_pi = params.pi.array().log();

  double max_delta = 0.0;
  std::vector<std::uint64_t> slots;
  std::vector<double> logs;    // per neighbour slot, C log-factors
  std::vector<double> prefix;  // (d + 1) x C
  std::vector<double> suffix;
  std::vector<double> fresh(static_cast<std::size_t>(C));
  for (NodeId i : state.order) {
    if (state.clamped[i]) continue;
    slots.clear();
    for (auto e = offsets[i]; e < offsets[i + 1]; ++e) {
      if (targets[e] != i) slots.push_back(e);
    }
    const std::size_t d = slots.size();
    logs.assign(d * C, 0.0);
    for (std::size_t t = 0; t < d; ++t) {
      const double* incoming = &state.messages[state.reverse[slots[t]] * C];
      for (int s = 0; s < C; ++s) {
        double factor = 0.0;
        for (int r = 0; r < C; ++r) factor += params.c(s, r) * incoming[r];
        logs[t * C + s] = factor > 0.0 ? std::log(factor) : kNegInf;
      }
    }
    prefix.assign((d + 1) * C, 0.0);
    suffix.assign((d + 1) * C, 0.0);
    for (std::size_t t = 0; t < d; ++t) {
      for (int s = 0; s < C; ++s) {
        prefix[(t + 1) * C + s] = prefix[t * C + s] + logs[t * C + s];
        const std::size_t back = d - 1 - t;
        suffix[back * C + s] = suffix[(back + 1) * C + s] + logs[back * C + s];
      }
    }
    for (std::size_t t = 0; t < d; ++t) {
      for (int s = 0; s < C; ++s) {
        fresh[s] = state.log_xi[s] + prefix[t * C + s] + suffix[(t + 1) * C + s];
      }
      if (!normalize_log(fresh.data(), C)) fail(i);
      double* out = &state.messages[slots[t] * C];
      for (int s = 0; s < C; ++s) {
        max_delta = std::max(max_delta, std::abs(fresh[s] - out[s]));
        out[s] = fresh[s];
      }
    }
    for (int s = 0; s < C; ++s) fresh[s] = state.log_xi[s] + prefix[d * C + s];
    if (!normalize_log(fresh.data(), C)) fail(i);
    for (int s = 0; s < C; ++s) {
      belief_total[s] += fresh[s] - state.beliefs(i, s);
      state.beliefs(i, s) = fresh[s];
    }
    if (params.incremental_field) {
      state.log_xi = log_pi - params.c * belief_total / n;
    }
  }
  return max_delta;
}

std::vector<int> argmax_labels(const Eigen::MatrixXd& beliefs) {
  std::vector<int> labels(static_cast<std::size_t>(beliefs.rows()));
  for (Eigen::Index i = 0; i < beliefs.rows(); ++i) {
    int best = 0;
    for (Eigen::Index s = 1; s < beliefs.cols(); ++s) {
      if (beliefs(i, s) > beliefs(i, best)) best = static_cast<int>(s);
    }
    labels[i] = best;
  }
  return labels;
}

BpResult bp_run(const Graph& graph, const BpParams& params,
                const std::vector<NodeId>& seeds, int seed_class,
                std::uint64_t rng_seed) {
  BpState state = bp_init(graph, params, seeds, seed_class, rng_seed);
  BpResult result;
  for (int sweep = 0; sweep < params.max_iters; ++sweep) {
    result.max_delta = bp_sweep(state, graph, params);
    if (result.max_delta < params.tol) {
      result.converged = true;
      break;
    }
  }
  result.sweeps = state.sweeps;
  result.beliefs = std::move(state.beliefs);
  result.labeling = argmax_labels(result.beliefs);
  return result;
}

}  // namespace seedrank
