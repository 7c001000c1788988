#include "seedrank/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <optional>
#include <set>

#include "seedrank/bp.hpp"
#include "seedrank/discriminant.hpp"
#include "seedrank/errors.hpp"
#include "seedrank/estimator.hpp"
#include "seedrank/evaluation.hpp"
#include "seedrank/io.hpp"
#include "seedrank/parallel.hpp"
#include "seedrank/theory.hpp"

namespace seedrank {

using nlohmann::json;

namespace {

const std::set<std::string> kExperiments = {"centroids-fig1", "correlation-fig2",
                                            "recall-fig2", "heatmap-figS1"};
const std::set<std::string> kMethods = {"ppr-alpha-star", "ppr-alpha-est",
                                        "ppr-fixed",      "heat-kernel",
                                        "lin-sbmrank",    "quad-sbmrank",
                                        "bp"};
// Stream index reserved for per-cell moment estimation; trial indices are
// far below it.
constexpr std::uint64_t kMomentStream = ~std::uint64_t{0};

std::vector<double> linspace(double lo, double hi, int count) {
  std::vector<double> out;
  for (int i = 0; i < count; ++i) {
    out.push_back(lo + (hi - lo) * i / (count - 1));
  }
  return out;
}

template <typename T>
void overlay(const json& j, const char* key, T& target) {
  if (!j.contains(key)) return;
  try {
    target = j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ValidationError(std::string("config: field '") + key +
                          "' has the wrong type");
  }
}

std::string cell_name(double p_in, double p_out) {
  return "p_in=" + io::fmt(p_in) + ",p_out=" + io::fmt(p_out);
}

bool uses_moments(const std::vector<std::string>& methods) {
  return std::any_of(methods.begin(), methods.end(), [](const std::string& m) {
    return m == "lin-sbmrank" || m == "quad-sbmrank";
  });
}

/// Ranking-method models that depend only on the model parameters.
struct CellModels {
  AffiliationParams aff;
  SbmParams sbm;
  std::optional<DiscriminantModel> lin;
  std::optional<DiscriminantModel> quad;
  std::string moment_error;
};

CellModels prepare_cell(const ExperimentConfig& config, std::uint64_t cell,
                        double p_in, double p_out) {
  CellModels models;
  models.aff = AffiliationParams{config.n / 2, config.n - config.n / 2, p_in, p_out};
  models.aff.validate();
  models.sbm = affiliation_to_sbm(models.aff);
  if (!uses_moments(config.methods)) return models;
  MomentEstimationConfig mc;
  mc.params = models.sbm;
  mc.split = ClassSplit::from_in_blocks({0}, 2);
  mc.realizations = config.moment_realizations;
  mc.K_max = config.K_max;
  mc.cond_cap = config.cond_cap;
  mc.rng_seed = Rng::stream(config.rng_seed, cell, kMomentStream).next();
  mc.jobs = config.jobs;
  try {
    const ClassMoments moments = estimate_moments(mc);
    models.lin = lin_sbmrank(moments, config.cond_cap);
    models.quad = quad_sbmrank(moments, config.cond_cap);
  } catch (const Error& e) {
    models.moment_error = e.what();
  }
  return models;
}

/// One realized trial: graph with shuffled ids, truth, seed.
struct Trial {
  Graph graph;
  std::vector<int> truth;      // 1 = in-class (block a)
  std::vector<char> in_class;  // same, as char for recall
  NodeId seed = 0;
  std::uint64_t bp_seed = 0;
};

Trial make_trial(const ExperimentConfig& config, const CellModels& models,
                 std::uint64_t cell, int trial) {
  Rng rng = Rng::stream(config.rng_seed, cell, static_cast<std::uint64_t>(trial));
  Trial t;
  t.graph = generate(models.sbm, rng.next());
  if (config.permute_nodes) {
    // Ties are broken by node id, so the block-contiguous layout must not
    // survive into the ranking.
    std::vector<NodeId> perm(static_cast<std::size_t>(t.graph.num_nodes()));
    std::iota(perm.begin(), perm.end(), NodeId{0});
    rng.shuffle(std::span<NodeId>(perm));
    t.graph = t.graph.permuted(perm);
  }
  std::vector<NodeId> members;
  for (std::int64_t v = 0; v < t.graph.num_nodes(); ++v) {
    const bool in = t.graph.blocks()[v] == 0;
    t.truth.push_back(in ? 1 : 0);
    t.in_class.push_back(in ? 1 : 0);
    if (in) members.push_back(static_cast<NodeId>(v));
  }
  t.seed = members[rng.below(members.size())];
  t.bp_seed = rng.next();
  return t;
}

LandingProfile leading(const LandingProfile& profile, int K) {
  return LandingProfile{profile.r.leftCols(K)};
}

/// Output of one method on one trial: a score per node (higher = more
/// likely in-class) and, for BP, its own labeling.
struct MethodOutput {
  Eigen::VectorXd scores;
  std::optional<std::vector<int>> labels;
  bool bp_converged = true;
};

MethodOutput run_method(const std::string& method, const ExperimentConfig& config,
                        const CellModels& models, const Trial& trial,
                        const LandingProfile& profile) {
  MethodOutput out;
  const double p_in = models.aff.p_in;
  const double p_out = models.aff.p_out;
  if (method == "bp") {
    BpParams bp = BpParams::from_sbm(models.sbm);
    bp.tol = config.bp_tol;
    bp.max_iters = config.bp_max_iters;
    const BpResult res = bp_run(trial.graph, bp, {trial.seed}, 0, trial.bp_seed);
    out.scores = res.beliefs.col(0);
    std::vector<int> labels(res.labeling.size());
    for (std::size_t v = 0; v < labels.size(); ++v) labels[v] = res.labeling[v] == 0 ? 1 : 0;
    out.labels = std::move(labels);
    out.bp_converged = res.converged;
    return out;
  }
  DiscriminantModel model;
  if (method == "ppr-alpha-star") {
    if (!(p_in + p_out > 0.0)) throw DegenerateParameterError("alpha*: p_in + p_out = 0");
    model = ppr_weights((p_in - p_out) / (p_in + p_out), config.K);
  } else if (method == "ppr-alpha-est") {
    const EstimatedParams est =
        estimate(trial.graph, models.aff.n_a, models.aff.n_b);
    model = ppr_weights(est.alpha_est, config.K);
  } else if (method == "ppr-fixed") {
    model = ppr_weights(config.ppr_alpha, config.K);
  } else if (method == "heat-kernel") {
    model = heat_kernel_weights(config.heat_t, config.K);
  } else if (method == "lin-sbmrank" || method == "quad-sbmrank") {
    const auto& chosen = method == "lin-sbmrank" ? models.lin : models.quad;
    if (!chosen) throw DegenerateMomentsError("moments: " + models.moment_error);
    model = *chosen;
  } else {
    throw ValidationError("unknown method " + method);
  }
  out.scores = score(model, leading(profile, model.K()));
  return out;
}

int profile_length(const ExperimentConfig& config, const CellModels& models) {
  int K = config.K;
  if (models.lin) K = std::max(K, models.lin->K());
  if (models.quad) K = std::max(K, models.quad->K());
  return K;
}

/// Per-trial outcome for every method; nullopt marks a failure.
struct TrialOutcome {
  std::vector<std::optional<double>> r;
  std::vector<std::optional<std::vector<double>>> recall;  // full curve
  std::vector<std::string> errors;
  int bp_nonconverged = 0;
};

TrialOutcome run_trial(const ExperimentConfig& config, const CellModels& models,
                       std::uint64_t cell, int trial_index, bool want_recall) {
  const std::size_t count = config.methods.size();
  TrialOutcome outcome;
  outcome.r.resize(count);
  outcome.recall.resize(count);
  outcome.errors.resize(count);
  std::optional<Trial> trial;
  std::optional<LandingProfile> profile;
  try {
    trial = make_trial(config, models, cell, trial_index);
    profile = landing_probabilities(trial->graph,
                                    WalkConfig{{trial->seed}, profile_length(config, models)});
  } catch (const Error& e) {
    for (auto& err : outcome.errors) err = e.what();
    return outcome;
  }
  for (std::size_t i = 0; i < count; ++i) {
    try {
      const MethodOutput out =
          run_method(config.methods[i], config, models, *trial, *profile);
      if (!out.bp_converged) ++outcome.bp_nonconverged;
      std::vector<int> predicted;
      if (out.labels) {
        predicted = *out.labels;
      } else {
        const auto order = seeded_order(out.scores, std::span<const NodeId>(&trial->seed, 1));
        predicted = top_m_labeling(order, models.aff.n_a);
      }
      outcome.r[i] = pearson_correlation(predicted, trial->truth);
      if (want_recall) {
        outcome.recall[i] = recall_curve(out.scores, trial->in_class,
                                         std::span<const NodeId>(&trial->seed, 1))
                                .recall;
      }
    } catch (const Error& e) {
      outcome.r[i].reset();
      outcome.errors[i] = e.what();
    }
  }
  return outcome;
}

std::vector<TrialOutcome> run_cell(const ExperimentConfig& config,
                                   const CellModels& models, std::uint64_t cell,
                                   bool want_recall, const std::string& name,
                                   ExperimentResult& result) {
  std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(config.trials));
  parallel_for(outcomes.size(), config.jobs, [&](std::size_t t) {
    outcomes[t] = run_trial(config, models, cell, static_cast<int>(t), want_recall);
  });
  for (std::size_t t = 0; t < outcomes.size(); ++t) {
    result.bp_nonconverged += outcomes[t].bp_nonconverged;
    for (std::size_t i = 0; i < config.methods.size(); ++i) {
      if (!outcomes[t].r[i]) {
        result.failures.push_back(TrialFailure{name, static_cast<int>(t),
                                               config.methods[i], outcomes[t].errors[i]});
      }
    }
  }
  return outcomes;
}

void run_correlation(const ExperimentConfig& config, ExperimentResult& result) {
  std::string csv = "trial,method,ratio,r\n";
  for (std::size_t c = 0; c < config.ratios.size(); ++c) {
    const double ratio = config.ratios[c];
    const AffiliationParams aff =
        affiliation_from_ratio(config.n, ratio, config.mean_degree);
    const CellModels models = prepare_cell(config, c, aff.p_in, aff.p_out);
    const auto outcomes = run_cell(config, models, c, false,
                                   "ratio=" + io::fmt(ratio), result);
    for (std::size_t t = 0; t < outcomes.size(); ++t) {
      for (std::size_t i = 0; i < config.methods.size(); ++i) {
        if (!outcomes[t].r[i]) continue;
        const double r = *outcomes[t].r[i];
        result.correlation.push_back({static_cast<int>(t), config.methods[i], ratio, r});
        csv += std::to_string(t) + ',' + config.methods[i] + ',' + io::fmt(ratio) +
               ',' + io::fmt(r) + '\n';
      }
    }
  }
  result.files["correlation.csv"] = csv;
}

void run_recall(const ExperimentConfig& config, ExperimentResult& result) {
  const CellModels models = prepare_cell(config, 0, config.p_in, config.p_out);
  const auto outcomes = run_cell(config, models, 0, true,
                                 cell_name(config.p_in, config.p_out), result);
  std::string csv = "method,m,recall_mean,recall_std\n";
  std::string at_block = "trial,method,recall\n";
  const auto n = static_cast<std::size_t>(config.n);
  const auto block = static_cast<std::size_t>(models.aff.n_a);
  for (std::size_t i = 0; i < config.methods.size(); ++i) {
    const std::string& method = config.methods[i];
    for (std::size_t t = 0; t < outcomes.size(); ++t) {
      if (!outcomes[t].recall[i]) continue;
      const double r = (*outcomes[t].recall[i])[block - 1];
      result.recall_at_block.push_back({static_cast<int>(t), method, r});
      at_block += std::to_string(t) + ',' + method + ',' + io::fmt(r) + '\n';
    }
    for (std::size_t m = 1; m <= n; ++m) {
      std::vector<double> values;
      for (const auto& o : outcomes) {
        if (o.recall[i]) values.push_back((*o.recall[i])[m - 1]);
      }
      if (values.empty()) continue;
      const MeanStd s = mean_std(values);
      result.recall.push_back({method, static_cast<std::int64_t>(m), s.mean, s.std});
      csv += method + ',' + std::to_string(m) + ',' + io::fmt(s.mean) + ',' +
             io::fmt(s.std) + '\n';
    }
  }
  result.files["recall.csv"] = csv;
  result.files["recall_at_block.csv"] = at_block;
}

void run_heatmap(const ExperimentConfig& config, ExperimentResult& result) {
  std::string csv = "p_in,p_out,method,r_mean,r_std,trials\n";
  std::uint64_t cell = 0;
  for (double p_in : config.grid_p_in) {
    for (double p_out : config.grid_p_out) {
      const CellModels models = prepare_cell(config, cell, p_in, p_out);
      const auto outcomes =
          run_cell(config, models, cell, false, cell_name(p_in, p_out), result);
      ++cell;
      for (std::size_t i = 0; i < config.methods.size(); ++i) {
        std::vector<double> values;
        for (const auto& o : outcomes) {
          if (o.r[i]) values.push_back(*o.r[i]);
        }
        const MeanStd s = mean_std(values);
        const int ok = static_cast<int>(values.size());
        result.heatmap.push_back({p_in, p_out, config.methods[i], s.mean, s.std, ok});
        csv += io::fmt(p_in) + ',' + io::fmt(p_out) + ',' + config.methods[i] + ',' +
               io::fmt(s.mean) + ',' + io::fmt(s.std) + ',' + std::to_string(ok) + '\n';
      }
    }
  }
  result.files["heatmap.csv"] = csv;
}

void run_centroids(const ExperimentConfig& config, ExperimentResult& result) {
  const SbmParams& params = config.params;
  const ClassSplit split =
      ClassSplit::from_in_blocks(config.in_blocks, params.num_blocks());
  const int K = config.centroid_K;
  const TheorySolution theory = theory_for(params, split, config.seed_block, K);
  result.files["theory.json"] = io::theory_to_json(theory).dump(2) + "\n";

  const auto sizes = params.block_sizes();
  std::int64_t first = 0;
  for (int b = 0; b < config.seed_block; ++b) first += sizes[b];
  const auto R = static_cast<Eigen::Index>(config.realizations);
  Eigen::MatrixXd A(R, K), B(R, K);
  std::vector<std::string> errors(static_cast<std::size_t>(R));
  parallel_for(static_cast<std::size_t>(R), config.jobs, [&](std::size_t r) {
    try {
      Rng rng = Rng::stream(config.rng_seed, 0, r);
      const Graph graph = generate(params, rng.next());
      const auto seed = static_cast<NodeId>(
          first + static_cast<std::int64_t>(rng.below(sizes[config.seed_block])));
      const auto profile = landing_probabilities(graph, WalkConfig{{seed}, K});
      const auto [a, b] = class_mean_profiles(profile, graph.blocks(), split);
      A.row(static_cast<Eigen::Index>(r)) = a.transpose();
      B.row(static_cast<Eigen::Index>(r)) = b.transpose();
    } catch (const Error& e) {
      errors[r] = e.what();
    }
  });
  std::vector<Eigen::Index> kept;
  for (Eigen::Index r = 0; r < R; ++r) {
    if (errors[r].empty()) {
      kept.push_back(r);
    } else {
      result.failures.push_back({"realizations", static_cast<int>(r), "", errors[r]});
    }
  }
  if (kept.size() < 2) throw NumericError("centroids: fewer than two usable realizations");
  const auto rows = static_cast<Eigen::Index>(kept.size());
  Eigen::MatrixXd a_s(rows, K), b_s(rows, K), d_s(rows, K);
  for (Eigen::Index i = 0; i < rows; ++i) {
    a_s.row(i) = A.row(kept[i]);
    b_s.row(i) = B.row(kept[i]);
    for (int k = 0; k < K; ++k) {
      d_s(i, k) = (a_s(i, k) - b_s(i, k)) - theory.psi[k];
    }
  }
  std::string csv = "class,k,lo,hi,empirical_mean,theory\n";
  auto emit = [&](const char* cls, const Eigen::MatrixXd& s,
                  const std::vector<double>& th) {
    const QuantileBand band = quantile_bands(s);
    for (int k = 0; k < K; ++k) {
      const double mean = s.col(k).mean();
      result.bands.push_back({cls, k + 1, band.lower[k], band.upper[k], mean, th[k]});
      csv += std::string(cls) + ',' + std::to_string(k + 1) + ',' + io::fmt(band.lower[k]) +
             ',' + io::fmt(band.upper[k]) + ',' + io::fmt(mean) + ',' + io::fmt(th[k]) + '\n';
    }
  };
  emit("a", a_s, theory.centroid_a);
  emit("b", b_s, theory.centroid_b);
  emit("diff", d_s, std::vector<double>(static_cast<std::size_t>(K), 0.0));
  result.files["bands.csv"] = csv;
}

}  // namespace

SbmParams figure1_params() {
  SbmParams p;
  p.n = 2048;
  p.pi = {491.0 / 2048, 532.0 / 2048, 471.0 / 2048, 554.0 / 2048};
  p.P.resize(4, 4);
  p.P << 0.40, 0.15, 0.08, 0.04,
         0.15, 0.38, 0.04, 0.08,
         0.06, 0.08, 0.37, 0.16,
         0.06, 0.04, 0.18, 0.36;
  p.directed = true;  // P is not symmetric
  return p;
}

ExperimentConfig ExperimentConfig::make(const std::string& experiment,
                                        const json& overrides) {
  if (!kExperiments.count(experiment)) {
    throw ValidationError("config: unknown experiment '" + experiment + "'");
  }
  if (!overrides.is_null() && !overrides.is_object()) {
    throw ValidationError("config: expected a JSON object");
  }
  ExperimentConfig c;
  c.experiment = experiment;
  c.params = figure1_params();
  if (experiment == "correlation-fig2") {
    c.methods = {"ppr-alpha-star", "lin-sbmrank", "bp"};
    c.trials = 100;
    c.ratios = linspace(0.1, 0.9, 9);
  } else if (experiment == "recall-fig2") {
    c.methods = {"ppr-alpha-star", "heat-kernel", "lin-sbmrank", "quad-sbmrank", "bp"};
    c.trials = 500;
  } else if (experiment == "heatmap-figS1") {
    c.methods = {"ppr-fixed", "ppr-alpha-star", "lin-sbmrank"};
    c.trials = 20;
    c.grid_p_in = linspace(0.05, 0.5, 10);
    c.grid_p_out = linspace(0.05, 0.5, 10);
  } else {
    c.trials = 1;
  }
  if (overrides.is_object()) {
    const json& j = overrides;
    static const std::set<std::string> known{
        "experiment", "rng_seed", "jobs", "methods", "trials", "n", "mean_degree",
        "ratios", "p_in", "p_out", "grid_p_in", "grid_p_out", "permute_nodes", "K",
        "K_max", "moment_realizations", "cond_cap", "ppr_alpha", "heat_t", "bp_tol",
        "bp_max_iters", "in_blocks", "seed_block", "realizations", "centroid_K", "params"};
    for (const auto& item : j.items()) {
      if (!known.count(item.key())) {
        throw ValidationError("config: unknown key '" + item.key() + "'");
      }
    }
    overlay(j, "rng_seed", c.rng_seed);
    overlay(j, "jobs", c.jobs);
    overlay(j, "methods", c.methods);
    overlay(j, "trials", c.trials);
    overlay(j, "n", c.n);
    overlay(j, "mean_degree", c.mean_degree);
    overlay(j, "ratios", c.ratios);
    overlay(j, "p_in", c.p_in);
    overlay(j, "p_out", c.p_out);
    overlay(j, "grid_p_in", c.grid_p_in);
    overlay(j, "grid_p_out", c.grid_p_out);
    overlay(j, "permute_nodes", c.permute_nodes);
    overlay(j, "K", c.K);
    overlay(j, "K_max", c.K_max);
    overlay(j, "moment_realizations", c.moment_realizations);
    overlay(j, "cond_cap", c.cond_cap);
    overlay(j, "ppr_alpha", c.ppr_alpha);
    overlay(j, "heat_t", c.heat_t);
    overlay(j, "bp_tol", c.bp_tol);
    overlay(j, "bp_max_iters", c.bp_max_iters);
    overlay(j, "in_blocks", c.in_blocks);
    overlay(j, "seed_block", c.seed_block);
    overlay(j, "realizations", c.realizations);
    overlay(j, "centroid_K", c.centroid_K);
    if (j.contains("params")) c.params = io::params_from_json(j.at("params"));
  }
  c.validate();
  return c;
}

void ExperimentConfig::validate() const {
  if (!kExperiments.count(experiment)) {
    throw ValidationError("config: unknown experiment '" + experiment + "'");
  }
  if (jobs < 1) throw ValidationError("config: jobs must be >= 1");
  if (trials < 1) throw ValidationError("config: trials must be >= 1");
  for (const auto& m : methods) {
    if (!kMethods.count(m)) throw ValidationError("config: unknown method '" + m + "'");
  }
  if (experiment == "centroids-fig1") {
    params.validate();
    if (realizations < 2) throw ValidationError("config: realizations must be >= 2");
    if (centroid_K < 1) throw ValidationError("config: centroid_K must be >= 1");
    if (seed_block < 0 || seed_block >= params.num_blocks()) {
      throw ValidationError("config: seed_block out of range");
    }
    ClassSplit::from_in_blocks(in_blocks, params.num_blocks())
        .validate(params.num_blocks());
    return;
  }
  if (methods.empty()) throw ValidationError("config: methods must not be empty");
  if (n < 4) throw ValidationError("config: n must be >= 4");
  if (K < 1 || K_max < 1) throw ValidationError("config: K and K_max must be >= 1");
  if (moment_realizations < 2) {
    throw ValidationError("config: moment_realizations must be >= 2");
  }
  if (experiment == "correlation-fig2" && ratios.empty()) {
    throw ValidationError("config: ratios must not be empty");
  }
  if (experiment == "heatmap-figS1" && (grid_p_in.empty() || grid_p_out.empty())) {
    throw ValidationError("config: grid_p_in and grid_p_out must not be empty");
  }
}

json ExperimentConfig::to_json() const {
  json j{{"experiment", experiment}, {"rng_seed", rng_seed}, {"jobs", jobs}};
  if (experiment == "centroids-fig1") {
    j["params"] = io::params_to_json(params);
    j["in_blocks"] = in_blocks;
    j["seed_block"] = seed_block;
    j["realizations"] = realizations;
    j["centroid_K"] = centroid_K;
    return j;
  }
  j["methods"] = methods;
  j["trials"] = trials;
  j["n"] = n;
  if (experiment == "correlation-fig2") {
    j["mean_degree"] = mean_degree;
    j["ratios"] = ratios;
  } else if (experiment == "recall-fig2") {
    j["p_in"] = p_in;
    j["p_out"] = p_out;
  } else {
    j["grid_p_in"] = grid_p_in;
    j["grid_p_out"] = grid_p_out;
  }
  j["permute_nodes"] = permute_nodes;
  j["K"] = K;
  j["K_max"] = K_max;
  j["moment_realizations"] = moment_realizations;
  j["cond_cap"] = cond_cap;
  j["ppr_alpha"] = ppr_alpha;
  j["heat_t"] = heat_t;
  j["bp_tol"] = bp_tol;
  j["bp_max_iters"] = bp_max_iters;
  return j;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  ExperimentResult result;
  if (config.experiment == "correlation-fig2") {
    run_correlation(config, result);
  } else if (config.experiment == "recall-fig2") {
    run_recall(config, result);
  } else if (config.experiment == "heatmap-figS1") {
    run_heatmap(config, result);
  } else {
    run_centroids(config, result);
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  json failures = json::array();
  for (const auto& f : result.failures) {
    failures.push_back({{"cell", f.cell}, {"trial", f.trial}, {"method", f.method},
                        {"error", f.error}});
  }
  json files = json::array();
  for (const auto& [name, _] : result.files) files.push_back(name);
  result.manifest = json{{"config", config.to_json()},
                         {"version", kVersion},
                         {"eigen_version", std::to_string(EIGEN_WORLD_VERSION) + "." +
                                               std::to_string(EIGEN_MAJOR_VERSION) + "." +
                                               std::to_string(EIGEN_MINOR_VERSION)},
                         {"wall_time_seconds", seconds},
                         {"files", files},
                         {"num_failures", result.failures.size()},
                         {"failures", failures},
                         {"bp_nonconverged", result.bp_nonconverged}};
  return result;
}

void write_experiment(const std::string& dir, const ExperimentResult& result) {
  const io::fs::path root(dir);
  for (const auto& [name, contents] : result.files) io::write_text(root / name, contents);
  io::write_json(root / "manifest.json", result.manifest);
}

}  // namespace seedrank
