// seedrank command-line interface.
#include <algorithm>
#include <cstdint>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "seedrank/bp.hpp"
#include "seedrank/discriminant.hpp"
#include "seedrank/errors.hpp"
#include "seedrank/estimator.hpp"
#include "seedrank/experiment.hpp"
#include "seedrank/io.hpp"
#include "seedrank/theory.hpp"
#include "seedrank/walk.hpp"

using namespace seedrank;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

enum ExitCode { kOk = 0, kUnexpected = 1, kUsage = 2, kNumeric = 3, kIo = 4 };

/// Reads a flat JSON object as CLI11 configuration; keys are option names
/// without the leading dashes.
class JsonConfig : public CLI::Config {
 public:
  std::string to_config(const CLI::App*, bool, bool, std::string) const override {
    return "{}";
  }

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    json j;
    try {
      input >> j;
    } catch (const json::exception& e) {
      throw CLI::ParseError(std::string("malformed config JSON: ") + e.what(), kUsage);
    }
    if (!j.is_object()) throw CLI::ParseError("config must be a JSON object", kUsage);
    std::vector<CLI::ConfigItem> items;
    for (const auto& [key, value] : j.items()) {
      CLI::ConfigItem item;
      item.name = key;
      std::replace(item.name.begin(), item.name.end(), '_', '-');
      if (value.is_array()) {
        for (const auto& v : value) item.inputs.push_back(scalar(v));
      } else {
        item.inputs.push_back(scalar(value));
      }
      items.push_back(std::move(item));
    }
    return items;
  }

 private:
  static std::string scalar(const json& v) {
    return v.is_string() ? v.get<std::string>() : v.dump();
  }
};

struct GraphInput {
  std::string dir;
  bool directed = false;
};

void add_graph_option(CLI::App* sub, GraphInput& in) {
  sub->add_option("--graph", in.dir,
                  "Directory with edges.tsv, labels.tsv and optionally params.json")
      ->required();
  sub->add_flag("--directed", in.directed,
                "Treat edges as arcs when params.json is absent");
}

std::optional<SbmParams> graph_params(const GraphInput& in) {
  const fs::path p = fs::path(in.dir) / "params.json";
  if (!fs::exists(p)) return std::nullopt;
  return io::params_from_json(io::read_json(p));
}

Graph load_graph(const GraphInput& in) {
  const auto params = graph_params(in);
  const bool directed = params ? params->directed : in.directed;
  return io::read_graph(fs::path(in.dir) / "edges.tsv",
                        fs::path(in.dir) / "labels.tsv", directed);
}

std::vector<int> zero_based(const std::vector<int>& blocks, int C) {
  std::vector<int> out;
  for (int b : blocks) {
    if (b < 1 || b > C) throw ValidationError("block id out of range: " + std::to_string(b));
    out.push_back(b - 1);
  }
  return out;
}

std::vector<NodeId> to_nodes(const std::vector<std::int64_t>& ids) {
  std::vector<NodeId> out;
  for (auto v : ids) {
    if (v < 0) throw ValidationError("node ids must be >= 0");
    out.push_back(static_cast<NodeId>(v));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Seed set expansion on stochastic block models"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  std::uint64_t seed = 1;
  int jobs = 1;
  std::string out = ".";
  auto common = [&](CLI::App* sub) {
    sub->config_formatter(std::make_shared<JsonConfig>());
    sub->set_config("--config", "", "JSON object of option values");
    sub->add_option("--seed", seed, "RNG seed")->capture_default_str();
    sub->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--out", out, "Output directory")->capture_default_str();
  };

  // generate
  auto* gen = app.add_subcommand("generate", "Sample one SBM realization");
  std::string gen_params;
  gen->add_option("--params", gen_params, "Params JSON")->required();
  common(gen);

  // walk
  auto* walk = app.add_subcommand("walk", "Landing probabilities of a seeded walk");
  GraphInput walk_graph;
  std::vector<std::int64_t> walk_seeds;
  int walk_K = 6;
  add_graph_option(walk, walk_graph);
  walk->add_option("--seeds", walk_seeds, "Seed node ids (0-based)")->required();
  walk->add_option("--K", walk_K, "Walk length")->check(CLI::PositiveNumber);
  common(walk);

  // centroids
  auto* cent = app.add_subcommand("centroids", "Asymptotic centroids and Psi");
  std::string cent_params;
  std::vector<int> cent_in{1};
  int cent_seed_block = 1;
  int cent_K = 6;
  cent->add_option("--params", cent_params, "Params JSON")->required();
  cent->add_option("--in-blocks", cent_in, "In-class blocks (1-based)");
  cent->add_option("--seed-block", cent_seed_block, "Seed block (1-based)");
  cent->add_option("--K", cent_K, "Walk length")->check(CLI::PositiveNumber);
  common(cent);

  // rank
  auto* rank = app.add_subcommand("rank", "Score nodes with a discriminant");
  GraphInput rank_graph;
  std::string method;
  std::optional<double> alpha;
  std::optional<double> heat_t;
  std::string model_file, moments_file, theory_file;
  std::int64_t seed_node = 0;
  int rank_K = 6;
  int rank_K_max = 10;
  int realizations = 100;
  double cond_cap = kDefaultConditionCap;
  std::vector<int> rank_in{1};
  add_graph_option(rank, rank_graph);
  rank->add_option("--method", method,
                   "ppr, heat_kernel, geometric, lin_sbmrank or quad_sbmrank")
      ->required();
  rank->add_option("--alpha", alpha, "PPR alpha");
  rank->add_option("--t", heat_t, "Heat kernel time");
  rank->add_option("--model", model_file, "Model JSON (overrides the method weights)");
  rank->add_option("--moments", moments_file, "Class moments JSON for the SBMRank methods");
  rank->add_option("--theory", theory_file, "Theory JSON for the geometric method");
  rank->add_option("--seed-node", seed_node, "Seed node id (0-based)");
  rank->add_option("--K", rank_K, "Walk length for fixed weights")->check(CLI::PositiveNumber);
  rank->add_option("--K-max", rank_K_max, "Largest K for estimated moments");
  rank->add_option("--realizations", realizations, "Graphs for moment estimation");
  rank->add_option("--cond-cap", cond_cap, "Covariance condition-number cap");
  rank->add_option("--in-blocks", rank_in, "In-class blocks (1-based)");
  common(rank);

  // estimate
  auto* est = app.add_subcommand("estimate", "Affiliation-model parameter estimate");
  GraphInput est_graph;
  std::optional<std::int64_t> n_a, n_b;
  add_graph_option(est, est_graph);
  est->add_option("--n-a", n_a, "In-block size (default: from labels)");
  est->add_option("--n-b", n_b, "Out-block size (default: from labels)");
  common(est);

  // bp
  auto* bpc = app.add_subcommand("bp", "Belief propagation with a clamped seed set");
  GraphInput bp_graph;
  std::string bp_params;
  std::vector<std::int64_t> bp_seeds;
  int seed_class = 1;
  double tol = 1e-6;
  int max_iters = 1000;
  add_graph_option(bpc, bp_graph);
  bpc->add_option("--params", bp_params, "Params JSON (default: graph params.json)");
  bpc->add_option("--seeds", bp_seeds, "Seed node ids (0-based)");
  bpc->add_option("--seed-class", seed_class, "Seed class (1-based)");
  bpc->add_option("--tol", tol, "Convergence tolerance");
  bpc->add_option("--max-iters", max_iters, "Sweep cap");
  common(bpc);

  // experiment
  auto* exp = app.add_subcommand("experiment", "Run an experiment suite");
  std::string exp_id, exp_config;
  std::optional<std::uint64_t> exp_seed;
  std::optional<int> exp_jobs, exp_trials;
  std::vector<std::string> exp_methods;
  exp->add_option("id", exp_id,
                  "centroids-fig1, correlation-fig2, recall-fig2 or heatmap-figS1");
  exp->add_option("--config", exp_config, "Experiment config JSON");
  exp->add_option("--seed", exp_seed, "RNG seed");
  exp->add_option("--jobs", exp_jobs, "Worker threads")->check(CLI::PositiveNumber);
  exp->add_option("--out", out, "Output directory")->capture_default_str();
  exp->add_option("--trials", exp_trials, "Trials per cell");
  exp->add_option("--methods", exp_methods, "Methods to run");

  try {
    try {
      app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
      const int code = app.exit(e);
      return code == 0 ? kOk : kUsage;
    }
    const fs::path dir(out);

    if (*gen) {
      const SbmParams params = io::params_from_json(io::read_json(gen_params));
      io::write_graph(dir, generate(params, seed), params);
    } else if (*walk) {
      const Graph graph = load_graph(walk_graph);
      const auto profile =
          landing_probabilities(graph, WalkConfig{to_nodes(walk_seeds), walk_K});
      io::write_text(dir / "profile.csv", io::profile_csv(profile));
    } else if (*cent) {
      const SbmParams params = io::params_from_json(io::read_json(cent_params));
      const ClassSplit split =
          ClassSplit::from_in_blocks(zero_based(cent_in, params.num_blocks()),
                                     params.num_blocks());
      const auto theory = theory_for(
          params, split, zero_based({cent_seed_block}, params.num_blocks())[0], cent_K);
      io::write_json(dir / "theory.json", io::theory_to_json(theory));
    } else if (*rank) {
      const Graph graph = load_graph(rank_graph);
      if (seed_node < 0 || seed_node >= graph.num_nodes()) {
        throw ValidationError("--seed-node out of range");
      }
      std::string name = method;
      std::replace(name.begin(), name.end(), '-', '_');
      DiscriminantModel model;
      if (!model_file.empty()) {
        model = io::model_from_json(io::read_json(model_file));
      } else {
        const ModelKind kind = model_kind_from_string(name);
        const int C = graph.num_blocks();
        const ClassSplit split = ClassSplit::from_in_blocks(zero_based(rank_in, C), C);
        switch (kind) {
          case ModelKind::kPpr:
            if (!alpha) throw ValidationError("method ppr needs --alpha");
            model = ppr_weights(*alpha, rank_K);
            break;
          case ModelKind::kHeatKernel:
            if (!heat_t) throw ValidationError("method heat_kernel needs --t");
            model = heat_kernel_weights(*heat_t, rank_K);
            break;
          case ModelKind::kGeometric: {
            std::vector<double> a, b;
            if (!theory_file.empty()) {
              const json t = io::read_json(theory_file);
              a = t.at("centroid_a").get<std::vector<double>>();
              b = t.at("centroid_b").get<std::vector<double>>();
            } else {
              const auto params = graph_params(rank_graph);
              if (!params) throw ValidationError("method geometric needs --theory or params.json");
              const int seed_block = graph.blocks()[static_cast<std::size_t>(seed_node)];
              const auto theory = theory_for(*params, split, seed_block, rank_K);
              a = theory.centroid_a;
              b = theory.centroid_b;
            }
            model = geometric_model(Eigen::Map<Eigen::VectorXd>(a.data(), a.size()),
                                    Eigen::Map<Eigen::VectorXd>(b.data(), b.size()));
            break;
          }
          case ModelKind::kLinSbmRank:
          case ModelKind::kQuadSbmRank: {
            ClassMoments moments;
            if (!moments_file.empty()) {
              moments = io::moments_from_json(io::read_json(moments_file));
            } else {
              const auto params = graph_params(rank_graph);
              if (!params) throw ValidationError("SBMRank methods need --moments or params.json");
              MomentEstimationConfig mc;
              mc.params = *params;
              mc.split = split;
              mc.realizations = realizations;
              mc.K_max = rank_K_max;
              mc.cond_cap = cond_cap;
              mc.rng_seed = seed;
              mc.jobs = jobs;
              moments = estimate_moments(mc);
              io::write_json(dir / "moments.json", io::moments_to_json(moments));
            }
            model = kind == ModelKind::kLinSbmRank ? lin_sbmrank(moments, cond_cap)
                                                   : quad_sbmrank(moments, cond_cap);
            break;
          }
        }
      }
      const auto profile = landing_probabilities(
          graph, WalkConfig{{static_cast<NodeId>(seed_node)}, model.K()});
      io::write_json(dir / "model.json", io::model_to_json(model));
      io::write_text(dir / "scores.csv", io::score_csv(score(model, profile)));
    } else if (*est) {
      const Graph graph = load_graph(est_graph);
      std::int64_t a = n_a.value_or(-1), b = n_b.value_or(-1);
      if (!n_a || !n_b) {
        if (graph.num_blocks() != 2) {
          throw ValidationError("--n-a/--n-b needed unless the labels have two blocks");
        }
        const auto sizes = graph.block_sizes();
        if (!n_a) a = n_b ? graph.num_nodes() - *n_b : sizes[0];
        if (!n_b) b = graph.num_nodes() - a;
      }
      io::write_json(dir / "estimate.json", io::estimate_to_json(estimate(graph, a, b)));
    } else if (*bpc) {
      const Graph graph = load_graph(bp_graph);
      std::optional<SbmParams> params;
      if (!bp_params.empty()) {
        params = io::params_from_json(io::read_json(bp_params));
      } else {
        params = graph_params(bp_graph);
      }
      if (!params) throw ValidationError("bp needs --params or params.json");
      BpParams bp = BpParams::from_sbm(*params);
      bp.tol = tol;
      bp.max_iters = max_iters;
      const int sc = zero_based({seed_class}, bp.C)[0];
      const BpResult res = bp_run(graph, bp, to_nodes(bp_seeds), sc, seed);
      io::write_text(dir / "beliefs.csv", io::beliefs_csv(res.beliefs));
      io::write_json(dir / "bp.json", io::bp_meta_to_json(res));
    } else if (*exp) {
      json overrides = json::object();
      if (!exp_config.empty()) overrides = io::read_json(exp_config);
      if (!overrides.is_object()) throw ValidationError("config: expected a JSON object");
      if (exp_id.empty()) {
        if (!overrides.contains("experiment") || !overrides["experiment"].is_string()) {
          throw ValidationError("experiment id missing (positional or config 'experiment')");
        }
        exp_id = overrides["experiment"].get<std::string>();
      }
      if (exp_seed) overrides["rng_seed"] = *exp_seed;
      if (exp_jobs) overrides["jobs"] = *exp_jobs;
      if (exp_trials) overrides["trials"] = *exp_trials;
      if (!exp_methods.empty()) overrides["methods"] = exp_methods;
      const auto config = ExperimentConfig::make(exp_id, overrides);
      const auto result = run_experiment(config);
      write_experiment(out, result);
      for (const auto& f : result.failures) {
        std::cerr << "failed: " << f.cell << " trial " << f.trial << ' ' << f.method
                  << ": " << f.error << '\n';
      }
      if (!result.failures.empty()) return kNumeric;
    }
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const NumericError& e) {
    std::cerr << "numeric error: " << e.what() << '\n';
    return kNumeric;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kIo;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUnexpected;
  }
  return kOk;
}
