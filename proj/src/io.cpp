#include "seedrank/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "seedrank/errors.hpp"

namespace seedrank::io {

namespace {

const json& field(const json& j, const char* name, const char* context) {
  if (!j.is_object() || !j.contains(name)) {
    throw ValidationError(std::string(context) + ": missing field '" + name + "'");
  }
  return j.at(name);
}

[[noreturn]] void bad_field(const char* name, const char* context,
                            const char* expected) {
  throw ValidationError(std::string(context) + ": field '" + name +
                        "' must be " + expected);
}

double number_field(const json& j, const char* name, const char* context) {
  const json& v = field(j, name, context);
  if (!v.is_number()) bad_field(name, context, "a number");
  return v.get<double>();
}

std::vector<double> vector_field(const json& j, const char* name,
                                 const char* context) {
  const json& v = field(j, name, context);
  if (!v.is_array()) bad_field(name, context, "an array of numbers");
  std::vector<double> out;
  for (const json& x : v) {
    if (!x.is_number()) bad_field(name, context, "an array of numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

Eigen::MatrixXd matrix_field(const json& j, const char* name,
                             const char* context) {
  const json& v = field(j, name, context);
  if (!v.is_array() || v.empty()) bad_field(name, context, "a non-empty matrix");
  const auto rows = static_cast<Eigen::Index>(v.size());
  const auto cols = v[0].is_array() ? static_cast<Eigen::Index>(v[0].size()) : 0;
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const json& row = v[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      bad_field(name, context, "a rectangular matrix of numbers");
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      const json& x = row[static_cast<std::size_t>(c)];
      if (!x.is_number()) bad_field(name, context, "a rectangular matrix of numbers");
      m(r, c) = x.get<double>();
    }
  }
  return m;
}

bool bool_field(const json& j, const char* name, const char* context,
                bool fallback) {
  if (!j.contains(name)) return fallback;
  const json& v = j.at(name);
  if (!v.is_boolean()) bad_field(name, context, "a boolean");
  return v.get<bool>();
}

Eigen::VectorXd to_eigen(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(),
                                           static_cast<Eigen::Index>(v.size()));
}

}  // namespace

std::string fmt(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void write_text(const fs::path& path, const std::string& text) {
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  out.close();
  if (!out) throw IoError("failed writing " + path.string());
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

json read_json(const fs::path& path) {
  const std::string text = read_text(path);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(path.string() + ": malformed JSON: " + e.what());
  }
}

void write_json(const fs::path& path, const json& value) {
  write_text(path, value.dump(2) + "\n");
}

SbmParams params_from_json(const json& j) {
  constexpr const char* kCtx = "params";
  if (!j.is_object()) throw ValidationError("params: expected a JSON object");
  SbmParams p;
  const json& n = field(j, "n", kCtx);
  if (!n.is_number_integer()) bad_field("n", kCtx, "an integer");
  p.n = n.get<std::int64_t>();
  p.pi = vector_field(j, "pi", kCtx);
  p.P = matrix_field(j, "P", kCtx);
  p.directed = bool_field(j, "directed", kCtx, false);
  p.self_loops = bool_field(j, "self_loops", kCtx, false);
  p.validate();
  return p;
}

json params_to_json(const SbmParams& p) {
  return json{{"n", p.n},
              {"pi", p.pi},
              {"P", matrix_to_json(p.P)},
              {"directed", p.directed},
              {"self_loops", p.self_loops}};
}

std::string edge_list_tsv(const Graph& graph) {
  std::string out;
  for (const auto& [u, v] : graph.edge_list()) {
    out += std::to_string(u);
    out += '\t';
    out += std::to_string(v);
    out += '\n';
  }
  return out;
}

std::string labels_tsv(const Graph& graph) {
  std::string out;
  const auto& blocks = graph.blocks();
  for (std::size_t v = 0; v < blocks.size(); ++v) {
    out += std::to_string(v) + '\t' + std::to_string(blocks[v] + 1) + '\n';
  }
  return out;
}

Graph read_graph(const fs::path& edges, const fs::path& labels, bool directed) {
  std::vector<int> blocks;
  {
    std::istringstream in(read_text(labels));
    std::string line;
    std::int64_t expected = 0;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      std::istringstream row(line);
      std::int64_t node = -1;
      int block = 0;
      if (!(row >> node >> block) || node != expected || block < 1) {
        throw ValidationError(labels.string() + ": bad label line '" + line + "'");
      }
      blocks.push_back(block - 1);
      ++expected;
    }
  }
  const auto n = static_cast<std::int64_t>(blocks.size());
  std::vector<std::pair<NodeId, NodeId>> arcs;
  std::istringstream in(read_text(edges));
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::int64_t u = -1, v = -1;
    if (!(row >> u >> v) || u < 0 || v < 0 || u >= n || v >= n) {
      throw ValidationError(edges.string() + ": bad edge line '" + line + "'");
    }
    arcs.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v));
  }
  return Graph::from_edges(n, arcs, std::move(blocks), directed);
}

void write_graph(const fs::path& dir, const Graph& graph,
                 const SbmParams& params) {
  write_text(dir / "edges.tsv", edge_list_tsv(graph));
  write_text(dir / "labels.tsv", labels_tsv(graph));
  write_json(dir / "params.json", params_to_json(params));
}

std::string profile_csv(const LandingProfile& profile) {
  std::string out = "node";
  for (int k = 1; k <= profile.K(); ++k) out += ",k" + std::to_string(k);
  out += '\n';
  for (Eigen::Index v = 0; v < profile.r.rows(); ++v) {
    out += std::to_string(v);
    for (Eigen::Index k = 0; k < profile.r.cols(); ++k) {
      out += ',' + fmt(profile.r(v, k));
    }
    out += '\n';
  }
  return out;
}

json theory_to_json(const TheorySolution& theory) {
  return json{{"psi", theory.psi},
              {"alpha_star", theory.alpha_star ? json(*theory.alpha_star) : json(nullptr)},
              {"centroid_a", theory.centroid_a},
              {"centroid_b", theory.centroid_b},
              {"homogeneity_violation", theory.homogeneity_violation}};
}

json model_to_json(const DiscriminantModel& model) {
  return json{{"kind", std::string(to_string(model.kind))},
              {"K", model.K()},
              {"w", to_vector(model.w)},
              {"W", model.is_linear() ? json(nullptr) : matrix_to_json(model.W)},
              {"w0", model.w0}};
}

DiscriminantModel model_from_json(const json& j) {
  constexpr const char* kCtx = "model";
  DiscriminantModel m;
  const json& kind = field(j, "kind", kCtx);
  if (!kind.is_string()) bad_field("kind", kCtx, "a string");
  m.kind = model_kind_from_string(kind.get<std::string>());
  m.w = to_eigen(vector_field(j, "w", kCtx));
  const auto K = m.w.size();
  if (j.contains("K") && j.at("K") != K) bad_field("K", kCtx, "the length of w");
  if (j.contains("W") && !j.at("W").is_null()) {
    m.W = matrix_field(j, "W", kCtx);
    if (m.W.rows() != K || m.W.cols() != K) bad_field("W", kCtx, "K x K");
  } else {
    m.W = Eigen::MatrixXd::Zero(K, K);
  }
  m.w0 = j.contains("w0") ? number_field(j, "w0", kCtx) : 0.0;
  return m;
}

std::string score_csv(const Eigen::VectorXd& scores) {
  const std::vector<NodeId> order = rank_order(scores);
  std::vector<std::size_t> rank(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = i + 1;
  std::string out = "node,score,rank\n";
  for (Eigen::Index v = 0; v < scores.size(); ++v) {
    out += std::to_string(v) + ',' + fmt(scores[v]) + ',' +
           std::to_string(rank[static_cast<std::size_t>(v)]) + '\n';
  }
  return out;
}

json moments_to_json(const ClassMoments& mo) {
  return json{{"a", to_vector(mo.a)},
              {"b", to_vector(mo.b)},
              {"sigma_a", matrix_to_json(mo.sigma_a)},
              {"sigma_b", matrix_to_json(mo.sigma_b)},
              {"pi_a", mo.pi_a},
              {"count_a", mo.count_a},
              {"count_b", mo.count_b}};
}

ClassMoments moments_from_json(const json& j) {
  constexpr const char* kCtx = "moments";
  ClassMoments mo;
  mo.a = to_eigen(vector_field(j, "a", kCtx));
  mo.b = to_eigen(vector_field(j, "b", kCtx));
  mo.sigma_a = matrix_field(j, "sigma_a", kCtx);
  mo.sigma_b = matrix_field(j, "sigma_b", kCtx);
  mo.pi_a = j.contains("pi_a") ? number_field(j, "pi_a", kCtx) : 0.5;
  mo.count_a = j.value("count_a", std::int64_t{0});
  mo.count_b = j.value("count_b", std::int64_t{0});
  mo.validate();
  return mo;
}

json estimate_to_json(const EstimatedParams& est) {
  return json{{"p_in_hat", est.p_in_hat},
              {"p_out_hat", est.p_out_hat},
              {"alpha_est", est.alpha_est},
              {"m", {est.moments.m1, est.moments.m2, est.moments.m3}},
              {"denominator", est.denominator}};
}

std::string beliefs_csv(const Eigen::MatrixXd& beliefs) {
  std::string out = "node,class,belief\n";
  for (Eigen::Index v = 0; v < beliefs.rows(); ++v) {
    for (Eigen::Index s = 0; s < beliefs.cols(); ++s) {
      out += std::to_string(v) + ',' + std::to_string(s + 1) + ',' +
             fmt(beliefs(v, s)) + '\n';
    }
  }
  return out;
}

json bp_meta_to_json(const BpResult& result) {
  return json{{"converged", result.converged},
              {"sweeps", result.sweeps},
              {"max_delta", result.max_delta}};
}

std::vector<double> to_vector(const Eigen::VectorXd& v) {
  return {v.data(), v.data() + v.size()};
}

json matrix_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace seedrank::io
