#include <filesystem>
#include <sstream>

#include "doctest.h"
#include "seedrank/errors.hpp"
#include "seedrank/experiment.hpp"
#include "seedrank/io.hpp"
#include "seedrank/rng.hpp"

using namespace seedrank;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("seedrank_io_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("doubles print with 17 significant digits and round-trip") {
  CHECK(io::fmt(0.1) == "0.10000000000000001");
  CHECK(io::fmt(1.0) == "1");
  Rng rng(1);
  for (int i = 0; i < 1000; ++i) {
    const double x = rng.uniform() * std::pow(10.0, static_cast<double>(rng.below(40)) - 20);
    CHECK(std::stod(io::fmt(x)) == x);
  }
}

TEST_CASE("params JSON round trip and field-named errors") {
  const SbmParams p = figure1_params();
  const SbmParams q = io::params_from_json(io::params_to_json(p));
  CHECK(q.n == p.n);
  CHECK(q.pi == p.pi);
  CHECK(q.P == p.P);
  CHECK(q.directed == p.directed);
  auto j = io::params_to_json(affiliation_to_sbm({10, 10, 0.3, 0.1}));
  j.erase("directed");
  j.erase("self_loops");
  CHECK_FALSE(io::params_from_json(j).self_loops);
  j["n"] = "many";
  try {
    io::params_from_json(j);
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("'n'") != std::string::npos);
  }
  j = io::params_to_json(p);
  j.erase("P");
  CHECK_THROWS_AS(io::params_from_json(j), ValidationError);
}

TEST_CASE("graph files round trip") {
  for (bool directed : {false, true}) {
    SbmParams p = affiliation_to_sbm({20, 12, 0.3, 0.1});
    p.directed = directed;
    const Graph g = generate(p, 4);
    const fs::path dir = scratch(directed ? "graph_d" : "graph_u");
    io::write_graph(dir, g, p);
    const Graph h = io::read_graph(dir / "edges.tsv", dir / "labels.tsv", directed);
    CHECK(h.edge_list() == g.edge_list());
    CHECK(h.blocks() == g.blocks());
    CHECK(io::read_text(dir / "labels.tsv").substr(0, 4) == "0\t1\n");
    CHECK(io::params_from_json(io::read_json(dir / "params.json")).n == 32);
  }
  CHECK_THROWS_AS(io::read_text("/nonexistent/file"), IoError);
}

TEST_CASE("malformed graph files are validation errors") {
  const fs::path dir = scratch("bad");
  io::write_text(dir / "labels.tsv", "0\t1\n1\t2\n");
  io::write_text(dir / "edges.tsv", "0\t5\n");
  CHECK_THROWS_AS(io::read_graph(dir / "edges.tsv", dir / "labels.tsv", false), ValidationError);
  io::write_text(dir / "edges.tsv", "0 x\n");
  CHECK_THROWS_AS(io::read_graph(dir / "edges.tsv", dir / "labels.tsv", false), ValidationError);
  io::write_text(dir / "bad.json", "{not json");
  CHECK_THROWS_AS(io::read_json(dir / "bad.json"), ValidationError);
}

TEST_CASE("model and moments JSON round trip") {
  ClassMoments m;
  m.a = Eigen::Vector2d(0.3, 0.1);
  m.b = Eigen::Vector2d(0.2, 0.15);
  m.sigma_a = (Eigen::Matrix2d() << 2, 0.5, 0.5, 1).finished();
  m.sigma_b = (Eigen::Matrix2d() << 1, 0.1, 0.1, 3).finished();
  m.pi_a = 0.25;
  m.count_a = 7;
  m.count_b = 21;
  const ClassMoments back = io::moments_from_json(io::moments_to_json(m));
  CHECK(back.a == m.a);
  CHECK(back.sigma_b == m.sigma_b);
  CHECK(back.count_b == 21);
  CHECK(back.pi_a == 0.25);
  const auto quad = quad_sbmrank(m);
  const auto again = io::model_from_json(io::model_to_json(quad));
  CHECK(again.kind == ModelKind::kQuadSbmRank);
  CHECK(again.w == quad.w);
  CHECK(again.W == quad.W);
  CHECK(again.w0 == quad.w0);
  const auto lin = io::model_to_json(ppr_weights(0.5, 3));
  CHECK(lin["W"].is_null());
  CHECK(lin["kind"] == "ppr");
  CHECK(lin["K"] == 3);
  CHECK(io::model_from_json(lin).W.isZero());
}

TEST_CASE("CSV layouts") {
  LandingProfile p{(Eigen::MatrixXd(2, 2) << 0.5, 0.25, 0.5, 0.75).finished()};
  CHECK(io::profile_csv(p) == "node,k1,k2\n0,0.5,0.25\n1,0.5,0.75\n");
  const Eigen::VectorXd s = (Eigen::VectorXd(3) << 0.2, 0.9, 0.2).finished();
  CHECK(io::score_csv(s) == "node,score,rank\n0,0.20000000000000001,2\n1,0.90000000000000002,1\n"
                            "2,0.20000000000000001,3\n");
  const Eigen::MatrixXd b = (Eigen::MatrixXd(1, 2) << 0.25, 0.75).finished();
  CHECK(io::beliefs_csv(b) == "node,class,belief\n0,1,0.25\n0,2,0.75\n");
}

TEST_CASE("theory, estimate and BP metadata JSON keys") {
  const auto t = io::theory_to_json(psi_two_block(0.3, 0.2, 64, 3));
  for (const char* key : {"psi", "alpha_star", "centroid_a", "centroid_b", "homogeneity_violation"}) {
    CHECK(t.contains(key));
  }
  CHECK(t["psi"].size() == 3);
  const auto none = io::theory_to_json(theory_for(figure1_params(),
                                                  ClassSplit::from_in_blocks({0, 1}, 4), 0, 3));
  CHECK(none["alpha_star"].is_null());
  EstimatedParams e;
  e.p_in_hat = 0.3;
  const auto ej = io::estimate_to_json(e);
  for (const char* key : {"p_in_hat", "p_out_hat", "alpha_est", "m", "denominator"}) CHECK(ej.contains(key));
  CHECK(ej["m"].size() == 3);
  BpResult r;
  r.converged = true;
  r.sweeps = 4;
  const auto bj = io::bp_meta_to_json(r);
  CHECK(bj["converged"] == true);
  CHECK(bj["sweeps"] == 4);
  CHECK(bj.contains("max_delta"));
}
