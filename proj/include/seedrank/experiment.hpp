#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "seedrank/sbm.hpp"
#include "seedrank/walk.hpp"

namespace seedrank {

inline constexpr const char* kVersion = "0.1.0";

/// One experiment suite. Fields not used by the chosen suite are ignored.
/// Every trial draws from Rng::stream(rng_seed, cell, trial), so results do
/// not depend on `jobs`.
struct ExperimentConfig {
  std::string experiment;  // centroids-fig1 | correlation-fig2 | recall-fig2 | heatmap-figS1
  std::uint64_t rng_seed = 1;
  int jobs = 1;
  std::vector<std::string> methods;
  int trials = 100;

  // Two-block suites.
  std::int64_t n = 128;
  double mean_degree = 16.0;  // (c_in + c_out) / 2
  std::vector<double> ratios;  // c_out / c_in
  double p_in = 0.3125;
  double p_out = 0.1875;
  std::vector<double> grid_p_in;
  std::vector<double> grid_p_out;
  bool permute_nodes = true;

  // Methods.
  int K = 10;  // walk length for the fixed-weight rankings
  int K_max = 10;
  int moment_realizations = 100;
  double cond_cap = 1e10;
  double ppr_alpha = 0.7;
  double heat_t = 2.0;
  double bp_tol = 1e-6;
  int bp_max_iters = 1000;

  // Centroid suite.
  SbmParams params;
  std::vector<int> in_blocks{0, 1};  // 0-based
  int seed_block = 0;
  int realizations = 200;
  int centroid_K = 6;

  /// Suite defaults, then every key present in `overrides`.
  static ExperimentConfig make(const std::string& experiment,
                               const nlohmann::json& overrides = {});
  void validate() const;
  nlohmann::json to_json() const;
};

/// Printed four-block model used by the centroid suite.
SbmParams figure1_params();

struct TrialFailure {
  std::string cell;
  int trial = -1;  // -1: the whole cell
  std::string method;
  std::string error;
};

struct CorrelationRow {
  int trial;
  std::string method;
  double ratio;
  double r;
};

struct RecallRow {
  std::string method;
  std::int64_t m;
  double recall_mean;
  double recall_std;
};

/// Recall at m = size of the in-class, per trial.
struct RecallAtBlockRow {
  int trial;
  std::string method;
  double recall;
};

struct BandRow {
  std::string cls;  // a, b, or diff (w_hat - psi)
  int k;
  double lo;
  double hi;
  double empirical_mean;
  double theory;
};

struct HeatmapRow {
  double p_in;
  double p_out;
  std::string method;
  double r_mean;
  double r_std;
  int trials;
};

struct ExperimentResult {
  std::vector<CorrelationRow> correlation;
  std::vector<RecallRow> recall;
  std::vector<RecallAtBlockRow> recall_at_block;
  std::vector<BandRow> bands;
  std::vector<HeatmapRow> heatmap;
  std::vector<TrialFailure> failures;
  int bp_nonconverged = 0;
  /// File name -> contents, every CSV/JSON artifact except the manifest.
  std::map<std::string, std::string> files;
  nlohmann::json manifest;
};

ExperimentResult run_experiment(const ExperimentConfig& config);

/// Writes `files` and manifest.json into `dir`.
void write_experiment(const std::string& dir, const ExperimentResult& result);

}  // namespace seedrank
