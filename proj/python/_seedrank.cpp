#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "seedrank/bp.hpp"
#include "seedrank/discriminant.hpp"
#include "seedrank/errors.hpp"
#include "seedrank/estimator.hpp"
#include "seedrank/evaluation.hpp"
#include "seedrank/experiment.hpp"
#include "seedrank/io.hpp"
#include "seedrank/sbm.hpp"
#include "seedrank/theory.hpp"
#include "seedrank/walk.hpp"

namespace py = pybind11;
using namespace seedrank;

namespace {

py::dict theory_dict(const TheorySolution& t) {
  py::dict d;
  d["psi"] = t.psi;
  d["alpha_star"] = t.alpha_star ? py::cast(*t.alpha_star) : py::none();
  d["centroid_a"] = t.centroid_a;
  d["centroid_b"] = t.centroid_b;
  d["homogeneity_violation"] = t.homogeneity_violation;
  return d;
}

py::dict model_dict(const DiscriminantModel& m) {
  py::dict d;
  d["kind"] = std::string(to_string(m.kind));
  d["w"] = m.w;
  d["W"] = m.W;
  d["w0"] = m.w0;
  return d;
}

}  // namespace

PYBIND11_MODULE(_seedrank, m) {
  m.doc() = "Seed set expansion on stochastic block models";
  m.attr("__version__") = kVersion;

  static py::exception<Error> base(m, "SeedrankError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ValidationError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const NumericError& e) {
      PyErr_SetString(PyExc_ArithmeticError, e.what());
    } catch (const IoError& e) {
      PyErr_SetString(PyExc_OSError, e.what());
    } catch (const Error& e) {
      PyErr_SetString(base.ptr(), e.what());
    }
  });

  py::class_<SbmParams>(m, "SbmParams")
      .def(py::init([](std::int64_t n, std::vector<double> pi, Eigen::MatrixXd P, bool directed,
                       bool self_loops) {
             SbmParams s{n, std::move(pi), std::move(P), directed, self_loops};
             s.validate();
             return s;
           }),
           py::arg("n"), py::arg("pi"), py::arg("P"), py::arg("directed") = false,
           py::arg("self_loops") = false)
      .def_readonly("n", &SbmParams::n)
      .def_readonly("pi", &SbmParams::pi)
      .def_readonly("P", &SbmParams::P)
      .def_readonly("directed", &SbmParams::directed)
      .def_readonly("self_loops", &SbmParams::self_loops)
      .def("block_sizes", &SbmParams::block_sizes);

  m.def("affiliation", [](std::int64_t n_a, std::int64_t n_b, double p_in, double p_out) {
    return affiliation_to_sbm({n_a, n_b, p_in, p_out});
  }, py::arg("n_a"), py::arg("n_b"), py::arg("p_in"), py::arg("p_out"),
        "Two-block affiliation model as SbmParams.");
  m.def("figure1_params", &figure1_params, "The four-block n = 2048 model.");

  py::class_<Graph>(m, "Graph")
      .def_static("from_edges",
                  [](std::int64_t n, const std::vector<std::pair<NodeId, NodeId>>& edges,
                     std::vector<int> blocks, bool directed) {
                    return Graph::from_edges(n, edges, std::move(blocks), directed);
                  },
                  py::arg("n"), py::arg("edges"), py::arg("blocks"), py::arg("directed") = false)
      .def_property_readonly("num_nodes", &Graph::num_nodes)
      .def_property_readonly("num_edges", &Graph::num_edges)
      .def_property_readonly("directed", &Graph::directed)
      .def_property_readonly("blocks", &Graph::blocks)
      .def("edges", &Graph::edge_list)
      .def("neighbors", [](const Graph& g, NodeId u) {
        if (u >= g.num_nodes()) throw ValidationError("node out of range");
        const auto nb = g.out_neighbors(u);
        return std::vector<NodeId>(nb.begin(), nb.end());
      });

  m.def("generate", &generate, py::arg("params"), py::arg("seed"));

  m.def("landing_probabilities",
        [](const Graph& g, std::vector<NodeId> seeds, int K) {
          return landing_probabilities(g, {std::move(seeds), K}).r;
        },
        py::arg("graph"), py::arg("seeds"), py::arg("K"));

  m.def("psi_two_block",
        [](double p_in, double p_out, double N, int K) { return theory_dict(psi_two_block(p_in, p_out, N, K)); },
        py::arg("p_in"), py::arg("p_out"), py::arg("N"), py::arg("K"));
  m.def("theory",
        [](const SbmParams& params, std::vector<int> in_blocks, int seed_block, int K) {
          const auto split = ClassSplit::from_in_blocks(std::move(in_blocks), params.num_blocks());
          return theory_dict(theory_for(params, split, seed_block, K));
        },
        py::arg("params"), py::arg("in_blocks"), py::arg("seed_block"), py::arg("K"),
        "Centroid theory for a C-block model; blocks are 0-based.");

  m.def("ppr_weights", [](double alpha, int K) { return ppr_weights(alpha, K).w; }, py::arg("alpha"),
        py::arg("K"));
  m.def("heat_kernel_weights", [](double t, int K) { return heat_kernel_weights(t, K).w; }, py::arg("t"),
        py::arg("K"));
  m.def("sbmrank",
        [](const Eigen::VectorXd& a, const Eigen::VectorXd& b, const Eigen::MatrixXd& sigma_a,
           const Eigen::MatrixXd& sigma_b, bool quadratic, double cond_cap) {
          ClassMoments mo;
          mo.a = a;
          mo.b = b;
          mo.sigma_a = sigma_a;
          mo.sigma_b = sigma_b;
          return model_dict(quadratic ? quad_sbmrank(mo, cond_cap) : lin_sbmrank(mo, cond_cap));
        },
        py::arg("a"), py::arg("b"), py::arg("sigma_a"), py::arg("sigma_b"), py::arg("quadratic") = false,
        py::arg("cond_cap") = kDefaultConditionCap);
  m.def("rank_order", &rank_order, py::arg("scores"), "Node ids by descending score, ties by id.");

  m.def("estimate",
        [](const Graph& g, std::int64_t n_a, std::int64_t n_b) {
          const auto e = estimate(g, n_a, n_b);
          py::dict d;
          d["p_in_hat"] = e.p_in_hat;
          d["p_out_hat"] = e.p_out_hat;
          d["alpha_est"] = e.alpha_est;
          d["m"] = std::vector<double>{e.moments.m1, e.moments.m2, e.moments.m3};
          d["denominator"] = e.denominator;
          return d;
        },
        py::arg("graph"), py::arg("n_a"), py::arg("n_b"));

  m.def("bp",
        [](const Graph& g, const SbmParams& params, std::vector<NodeId> seeds, int seed_class,
           std::uint64_t seed, double tol, int max_iters) {
          auto p = BpParams::from_sbm(params);
          p.tol = tol;
          p.max_iters = max_iters;
          BpResult r;
          {
            py::gil_scoped_release release;
            r = bp_run(g, p, seeds, seed_class, seed);
          }
          py::dict d;
          d["beliefs"] = r.beliefs;
          d["labeling"] = r.labeling;
          d["converged"] = r.converged;
          d["sweeps"] = r.sweeps;
          d["max_delta"] = r.max_delta;
          return d;
        },
        py::arg("graph"), py::arg("params"), py::arg("seeds"), py::arg("seed_class") = 0,
        py::arg("seed") = 1, py::arg("tol") = 1e-6, py::arg("max_iters") = 1000);

  m.def("pearson_correlation",
        [](const std::vector<int>& predicted, const std::vector<int>& truth) {
          return pearson_correlation(predicted, truth);
        },
        py::arg("predicted"), py::arg("truth"));

  m.def("_run_experiment",
        [](const std::string& experiment, const std::string& overrides_json) {
          const auto overrides = nlohmann::json::parse(overrides_json);
          const auto config = ExperimentConfig::make(experiment, overrides);
          ExperimentResult res;
          {
            py::gil_scoped_release release;
            res = run_experiment(config);
          }
          return std::make_pair(res.files, res.manifest.dump());
        },
        py::arg("experiment"), py::arg("overrides_json") = "{}");
}
