#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pmcsn/errors.hpp"
#include "pmcsn/exact.hpp"
#include "pmcsn/experiment.hpp"
#include "pmcsn/graph.hpp"
#include "pmcsn/network.hpp"
#include "pmcsn/rng.hpp"
#include "pmcsn/solvers.hpp"

namespace py = pybind11;
using namespace pmcsn;

namespace {

py::dict estimate_dict(const SpreadEstimate& e) {
  py::dict d;
  d["mean"] = e.mean;
  d["stderr"] = e.std_error;
  d["R"] = e.replications;
  d["kind"] = std::string(to_string(e.kind));
  return d;
}

py::dict record_dict(const ResultRecord& r) {
  py::dict d;
  d["dataset"] = r.dataset;
  d["prob_model"] = r.prob_model;
  d["algo"] = r.algo;
  d["budget"] = r.budget;
  d["ell"] = r.ell;
  d["repeat"] = r.repeat;
  d["seed"] = r.seed;
  d["n_seeds"] = r.n_seeds;
  d["cost"] = r.cost;
  d["profit_mean"] = r.profit_mean;
  d["profit_stderr"] = r.profit_stderr;
  d["R"] = r.replications;
  d["x"] = r.samples;
  d["elapsed_ms"] = r.elapsed_ms;
  d["checksum"] = r.checksum;
  d["seed_set"] = r.seed_set;
  return d;
}

ProbabilityModel prob_model_from(const std::string& s) {
  if (s == "trivalency") return ProbabilityModel::Trivalency;
  if (s == "wc") return ProbabilityModel::WeightedCascade;
  throw ConfigError("prob_model: expected 'trivalency' or 'wc', got '" + s + "'");
}

WeightedCascadeMode wc_mode_from(const std::string& s) {
  if (s == "source") return WeightedCascadeMode::SourceDegree;
  if (s == "target") return WeightedCascadeMode::TargetInDegree;
  throw ConfigError("wc_mode: expected 'source' or 'target', got '" + s + "'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Profit maximization in closed social networks (C++ core)";
  m.attr("__version__") = PMCSN_VERSION;

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<DataError>(m, "DataError", PyExc_RuntimeError);
  py::register_exception<LimitExceeded>(m, "LimitExceeded", PyExc_RuntimeError);

  py::class_<Graph>(m, "Graph")
      .def(py::init([](std::size_t n, std::vector<std::pair<NodeId, NodeId>> arcs, bool undirected) {
             return Graph(n, std::move(arcs), undirected);
           }),
           py::arg("n"), py::arg("arcs"), py::arg("undirected") = false)
      .def_property_readonly("node_count", &Graph::node_count)
      .def_property_readonly("arc_count", &Graph::arc_count)
      .def_property_readonly("edge_count", &Graph::edge_count)
      .def_property_readonly("undirected_origin", &Graph::undirected_origin)
      .def("out_degree", &Graph::out_degree)
      .def("in_degree", &Graph::in_degree)
      .def("out_neighbors",
           [](const Graph& g, NodeId u) {
             auto s = g.out_neighbors(u);
             return std::vector<NodeId>(s.begin(), s.end());
           })
      .def("arcs",
           [](const Graph& g) {
             std::vector<std::pair<NodeId, NodeId>> out;
             for (ArcId a = 0; a < g.arc_count(); ++a) out.emplace_back(g.arc_source(a), g.arc_target(a));
             return out;
           })
      .def("degree_stats",
           [](const Graph& g, const std::string& metric) {
             DegreeMetric dm = DegreeMetric::Total;
             if (metric == "out") dm = DegreeMetric::Out;
             else if (metric == "undirected") dm = DegreeMetric::Undirected;
             else if (metric != "total") throw ConfigError("metric: expected total, out or undirected");
             const auto s = degree_stats(g, dm);
             return py::make_tuple(s.max, s.average);
           },
           py::arg("metric") = "total")
      .def("__eq__", [](const Graph& a, const Graph& b) { return a == b; });

  m.def(
      "load_edge_list",
      [](const std::string& path, bool directed) {
        auto r = load_edge_list(path, directed);
        py::dict d;
        d["labels"] = r.labels;
        d["lines_read"] = r.lines_read;
        d["edge_lines"] = r.edge_lines;
        d["self_loops_dropped"] = r.self_loops_dropped;
        d["duplicates_dropped"] = r.duplicates_dropped;
        return py::make_tuple(std::move(r.graph), d);
      },
      py::arg("path"), py::arg("directed") = true);

  py::class_<EdgeProbabilities>(m, "EdgeProbabilities")
      .def(py::init([](std::vector<double> values) {
        return EdgeProbabilities(std::move(values), ProbabilityModel::Custom);
      }))
      .def_static("constant", &EdgeProbabilities::constant)
      .def_static("trivalency", &assign_trivalency, py::arg("graph"), py::arg("seed"))
      .def_static(
          "weighted_cascade",
          [](const Graph& g, const std::string& mode) { return assign_weighted_cascade(g, wc_mode_from(mode)); },
          py::arg("graph"), py::arg("mode") = "source")
      .def("values", [](const EdgeProbabilities& p) {
        return std::vector<double>(p.values().begin(), p.values().end());
      })
      .def("__len__", &EdgeProbabilities::size)
      .def("__getitem__", [](const EdgeProbabilities& p, ArcId a) {
        if (a >= p.size()) throw py::index_error();
        return p[a];
      });

  py::class_<CostBenefitTable>(m, "CostBenefitTable")
      .def(py::init<std::vector<double>, std::vector<double>>(), py::arg("costs"), py::arg("benefits"))
      .def_static("uniform", &CostBenefitTable::uniform, py::arg("n"), py::arg("cost"), py::arg("benefit"))
      .def_static(
          "assign",
          [](const Graph& g, const std::string& cost, const std::string& benefit, std::uint64_t seed) {
            return assign_cost_benefit(g, CostModel::parse(cost), BenefitModel::parse(benefit), seed);
          },
          py::arg("graph"), py::arg("cost_model") = "degree:1,0.1", py::arg("benefit_model") = "uniform:10",
          py::arg("seed") = 1)
      .def("cost", &CostBenefitTable::cost)
      .def("benefit", &CostBenefitTable::benefit)
      .def("cost_of", [](const CostBenefitTable& cb, std::vector<NodeId> s) { return cb.cost_of(s); })
      .def_property_readonly("min_cost", &CostBenefitTable::min_cost)
      .def_property_readonly("total_benefit", &CostBenefitTable::total_benefit)
      .def_property_readonly("max_profit_bound", &CostBenefitTable::max_profit_bound)
      .def("__len__", &CostBenefitTable::size);

  py::class_<DiffusionNetwork>(m, "DiffusionNetwork")
      .def_property_readonly("ell", &DiffusionNetwork::ell)
      .def_property_readonly("node_count", &DiffusionNetwork::node_count)
      .def_property_readonly("arc_count", &DiffusionNetwork::arc_count)
      .def("retained_out_degree", &DiffusionNetwork::retained_out_degree)
      .def("arcs", &DiffusionNetwork::arc_list)
      .def("to_json", [](const DiffusionNetwork& n) { return n.to_json().dump(); })
      .def("__eq__", [](const DiffusionNetwork& a, const DiffusionNetwork& b) { return a == b; });

  m.def(
      "sample_diffusion_network",
      [](const Graph& g, std::size_t ell, std::uint64_t seed) {
        auto rng = make_stream(seed, 0, "python-network");
        return sample_diffusion_network(g, ell, rng);
      },
      py::arg("graph"), py::arg("ell"), py::arg("seed"), py::keep_alive<0, 1>());
  m.def("top_degree_network", &build_top_degree_network, py::arg("graph"), py::arg("ell"),
        py::keep_alive<0, 1>());
  m.def(
      "count_diffusion_networks",
      [](const Graph& g, std::size_t ell) {
        return py::int_(py::str(count_diffusion_networks(g, ell).str()));
      },
      py::arg("graph"), py::arg("ell"));
  m.def(
      "validate_network",
      [](const Graph& g, const std::vector<std::pair<NodeId, NodeId>>& arcs,
         std::size_t ell) -> std::optional<std::pair<NodeId, std::string>> {
        auto v = validate_arc_list(g, arcs, ell);
        if (!v) return std::nullopt;
        return std::make_pair(v->node, v->reason);
      },
      py::arg("graph"), py::arg("arcs"), py::arg("ell"));

  m.def(
      "estimate_profit",
      [](const DiffusionNetwork& net, const EdgeProbabilities& probs, const CostBenefitTable& cb,
         std::vector<NodeId> seeds, std::size_t replications, std::uint64_t seed, unsigned threads) {
        py::gil_scoped_release release;
        auto e = estimate_profit(net, probs, seeds, cb, {replications, seed, threads});
        py::gil_scoped_acquire acquire;
        return estimate_dict(e);
      },
      py::arg("network"), py::arg("probs"), py::arg("cb"), py::arg("seeds"),
      py::arg("replications") = 10000, py::arg("seed") = 1, py::arg("threads") = 1);
  m.def(
      "exact_benefit",
      [](const DiffusionNetwork& net, const EdgeProbabilities& probs, const CostBenefitTable& cb,
         std::vector<NodeId> seeds) { return exact_benefit(net, probs, cb, seeds).to_double(); },
      py::arg("network"), py::arg("probs"), py::arg("cb"), py::arg("seeds"));
  m.def(
      "exact_optimum",
      [](const Graph& g, std::size_t ell, const EdgeProbabilities& probs, const CostBenefitTable& cb,
         double budget) {
        const auto o = exact_optimum(g, ell, probs, cb, budget);
        py::dict d;
        d["seeds"] = o.seeds;
        d["profit"] = o.profit.convert_to<double>();
        d["network_index"] = o.network_index;
        d["networks"] = o.networks;
        d["arcs"] = o.network.arc_list();
        return d;
      },
      py::arg("graph"), py::arg("ell"), py::arg("probs"), py::arg("cb"), py::arg("budget"));

  m.def(
      "sample_bound",
      [](double eps, double delta, double rho) { return sample_bound({eps, delta, rho}); },
      py::arg("eps") = 0.1, py::arg("delta") = 0.05, py::arg("rho") = 0.5);

  py::class_<Solution>(m, "Solution")
      .def_property_readonly("algorithm", [](const Solution& s) { return std::string(to_string(s.algorithm)); })
      .def_readonly("seeds", &Solution::seeds)
      .def_readonly("cost", &Solution::cost)
      .def_readonly("samples", &Solution::samples)
      .def_readonly("elapsed_ms", &Solution::elapsed_ms)
      .def_readonly("warnings", &Solution::warnings)
      .def_property_readonly("profit", [](const Solution& s) { return estimate_dict(s.profit); })
      .def_property_readonly(
          "network", py::cpp_function([](const Solution& s) { return s.network; }, py::keep_alive<0, 1>()))
      .def("to_json", [](const Solution& s) { return s.to_json().dump(); });

  m.def(
      "solve",
      [](const Graph& g, const EdgeProbabilities& probs, const CostBenefitTable& cb, const std::string& algo,
         double budget, std::size_t ell, std::size_t samples, std::size_t mc, std::size_t mc_report,
         double heu_eps, const std::string& gain, std::uint64_t seed, unsigned threads) {
        SolverOptions opts{budget, ell, mc, mc_report, seed, threads};
        const auto a = parse_algorithm(algo);
        const HeuristicParams hp{heu_eps, parse_gain_metric(gain)};
        py::gil_scoped_release release;
        switch (a) {
          case Algorithm::Sba: return solve_sba(g, probs, cb, opts, samples);
          case Algorithm::Heu: return solve_heu(g, probs, cb, opts, hp);
          case Algorithm::Random: return solve_random(g, probs, cb, opts);
          case Algorithm::HighDegree: break;
        }
        return solve_high_degree(g, probs, cb, opts);
      },
      py::arg("graph"), py::arg("probs"), py::arg("cb"), py::arg("algo"), py::arg("budget"), py::arg("ell"),
      py::arg("samples") = 50, py::arg("mc") = 100, py::arg("mc_report") = 10000, py::arg("heu_eps") = 0.1,
      py::arg("gain") = "benefit", py::arg("seed") = 1, py::arg("threads") = 1, py::keep_alive<0, 1>());

  m.def(
      "run",
      [](const std::string& dataset, const std::string& algo, double budget, std::size_t ell, bool undirected,
         const std::string& prob_model, const std::string& wc_mode, const std::string& cost_model,
         const std::string& benefit_model, std::size_t samples, std::size_t mc, std::size_t mc_report,
         double heu_eps, const std::string& gain, std::uint64_t seed, unsigned threads) {
        ExperimentConfig cfg;
        cfg.dataset = dataset;
        cfg.undirected = undirected;
        cfg.prob_model = prob_model_from(prob_model);
        cfg.wc_mode = wc_mode_from(wc_mode);
        cfg.prob_seed = seed;
        cfg.cost_model = CostModel::parse(cost_model);
        cfg.benefit_model = BenefitModel::parse(benefit_model);
        cfg.cost_benefit_seed = seed;
        cfg.algorithm = parse_algorithm(algo);
        cfg.budget = budget;
        cfg.ell = ell;
        cfg.samples = samples;
        cfg.mc = mc;
        cfg.mc_report = mc_report;
        cfg.heu_eps = heu_eps;
        cfg.gain = parse_gain_metric(gain);
        cfg.seed = seed;
        cfg.threads = threads;
        std::optional<ResultRecord> rec;
        {
          py::gil_scoped_release release;
          rec = run_experiment(cfg);
        }
        return record_dict(*rec);
      },
      py::arg("dataset"), py::arg("algo"), py::arg("budget"), py::arg("ell"), py::arg("undirected") = false,
      py::arg("prob_model") = "trivalency", py::arg("wc_mode") = "source", py::arg("cost_model") = "degree:1,0.1",
      py::arg("benefit_model") = "uniform:10", py::arg("samples") = 50, py::arg("mc") = 100,
      py::arg("mc_report") = 10000, py::arg("heu_eps") = 0.1, py::arg("gain") = "benefit", py::arg("seed") = 1,
      py::arg("threads") = 1);

  m.def("csv_columns", &ResultRecord::csv_columns);
}
