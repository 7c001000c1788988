#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "seedrank/bp.hpp"
#include "seedrank/discriminant.hpp"
#include "seedrank/estimator.hpp"
#include "seedrank/sbm.hpp"
#include "seedrank/theory.hpp"
#include "seedrank/walk.hpp"

namespace seedrank::io {

namespace fs = std::filesystem;
using nlohmann::json;

/// 17 significant digits, enough to round-trip any double.
std::string fmt(double value);

/// Throws IoError on failure. Parent directories are created.
void write_text(const fs::path& path, const std::string& text);
std::string read_text(const fs::path& path);
json read_json(const fs::path& path);
void write_json(const fs::path& path, const json& value);

/// Parses {"n", "pi", "P", "directed", "self_loops"}; the two flags default
/// to false. Malformed fields raise ValidationError naming the field.
SbmParams params_from_json(const json& j);
json params_to_json(const SbmParams& params);

/// `u\tv` per line, 0-based, sorted; undirected edges once with u <= v.
std::string edge_list_tsv(const Graph& graph);
/// `node\tblock` per line with 1-based blocks.
std::string labels_tsv(const Graph& graph);
/// Rebuilds a graph from the two TSV files. The node count is the number of
/// label lines.
Graph read_graph(const fs::path& edges, const fs::path& labels, bool directed);
/// Writes edges.tsv, labels.tsv and params.json into `dir`.
void write_graph(const fs::path& dir, const Graph& graph,
                 const SbmParams& params);

/// `node,k1,...,kK`.
std::string profile_csv(const LandingProfile& profile);

json theory_to_json(const TheorySolution& theory);

json model_to_json(const DiscriminantModel& model);
DiscriminantModel model_from_json(const json& j);
/// `node,score,rank`, one row per node in id order, rank 1 = best.
std::string score_csv(const Eigen::VectorXd& scores);

json moments_to_json(const ClassMoments& moments);
ClassMoments moments_from_json(const json& j);

json estimate_to_json(const EstimatedParams& est);

/// `node,class,belief` with 1-based classes.
std::string beliefs_csv(const Eigen::MatrixXd& beliefs);
json bp_meta_to_json(const BpResult& result);

std::vector<double> to_vector(const Eigen::VectorXd& v);
json matrix_to_json(const Eigen::MatrixXd& m);

}  // namespace seedrank::io
