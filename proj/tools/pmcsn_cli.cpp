// pmcsn: benchmark driver for profit maximization in closed social networks.
//
//   pmcsn run          one solver run, one result row
//   pmcsn sweep        budget x ell x algorithm x repeat grid, resumable
//   pmcsn oracle       brute-force optimum of a tiny instance
//   pmcsn sample-bound sample count for the sampling-based approach
//   pmcsn validate     check a diffusion network file against a graph
//
// Exit codes: 0 success, 2 configuration error, 3 data error.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "pmcsn/errors.hpp"
#include "pmcsn/exact.hpp"
#include "pmcsn/experiment.hpp"
#include "pmcsn/network.hpp"
#include "pmcsn/solvers.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitData = 3;

struct CommonFlags {
  std::string dataset;
  bool undirected = false;
  std::string prob_model = "trivalency";
  std::string wc_mode = "source";
  std::string cost_model = "degree:1,0.1";
  std::string benefit_model = "uniform:10";
  std::size_t samples = 50;
  std::size_t mc = 100;
  std::size_t mc_report = 10000;
  double heu_eps = 0.1;
  std::string gain = "benefit";
  std::uint64_t seed = 1;
  std::optional<std::uint64_t> prob_seed;
  std::optional<std::uint64_t> cb_seed;
  unsigned threads = 1;
  std::string out;
  std::string jsonl;
};

void add_instance_flags(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--dataset", f.dataset, "SNAP-style edge list")->required();
  cmd->add_flag("--undirected", f.undirected, "Treat each line as an undirected edge");
  cmd->add_option("--prob-model", f.prob_model, "Edge probability model")
      ->check(CLI::IsMember({"trivalency", "wc"}));
  cmd->add_option("--wc-mode", f.wc_mode, "Weighted cascade degree: source out-degree or target in-degree")
      ->check(CLI::IsMember({"source", "target"}));
  cmd->add_option("--cost-model", f.cost_model, "uniform:C or degree:BASE,GAMMA");
  cmd->add_option("--benefit-model", f.benefit_model, "uniform:B or range:LO,HI");
  cmd->add_option("--seed", f.seed, "Master RNG seed");
  cmd->add_option("--prob-seed", f.prob_seed, "Seed for probability assignment (default: --seed)");
  cmd->add_option("--cb-seed", f.cb_seed, "Seed for cost/benefit assignment (default: --seed)");
}

void add_solver_flags(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--samples", f.samples, "SBA sample count x");
  cmd->add_option("--mc", f.mc, "Monte Carlo replications used while searching");
  cmd->add_option("--mc-report", f.mc_report, "Monte Carlo replications for reported profit");
  cmd->add_option("--heu-eps", f.heu_eps, "HEU sampling epsilon");
  cmd->add_option("--gain", f.gain, "HEU gain metric")->check(CLI::IsMember({"benefit", "influence"}));
  cmd->add_option("--threads", f.threads, "Worker threads for Monte Carlo");
  cmd->add_option("--jsonl", f.jsonl, "Also append JSON lines to this file");
}

pmcsn::ExperimentConfig base_config(const CommonFlags& f) {
  pmcsn::ExperimentConfig cfg;
  cfg.dataset = f.dataset;
  cfg.undirected = f.undirected;
  cfg.prob_model = f.prob_model == "wc" ? pmcsn::ProbabilityModel::WeightedCascade
                                        : pmcsn::ProbabilityModel::Trivalency;
  cfg.wc_mode = f.wc_mode == "target" ? pmcsn::WeightedCascadeMode::TargetInDegree
                                      : pmcsn::WeightedCascadeMode::SourceDegree;
  cfg.prob_seed = f.prob_seed.value_or(f.seed);
  cfg.cost_model = pmcsn::CostModel::parse(f.cost_model);
  cfg.benefit_model = pmcsn::BenefitModel::parse(f.benefit_model);
  cfg.cost_benefit_seed = f.cb_seed.value_or(f.seed);
  cfg.samples = f.samples;
  cfg.mc = f.mc;
  cfg.mc_report = f.mc_report;
  cfg.heu_eps = f.heu_eps;
  cfg.gain = pmcsn::parse_gain_metric(f.gain);
  cfg.seed = f.seed;
  cfg.threads = f.threads;
  return cfg;
}

int cmd_run(const CommonFlags& f, const std::string& algo, double budget, std::size_t ell,
            const std::string& edges_out) {
  auto cfg = base_config(f);
  cfg.algorithm = pmcsn::parse_algorithm(algo);
  cfg.budget = budget;
  cfg.ell = ell;
  cfg.validate();

  const auto inst = pmcsn::make_instance(cfg);
  std::optional<pmcsn::Solution> sol;
  const auto rec = pmcsn::run_experiment(cfg, inst, &sol);
  for (const auto& w : sol->warnings) std::cerr << "warning: " << w << '\n';

  if (!edges_out.empty()) {
    std::ofstream out(edges_out);
    if (!out) throw pmcsn::DataError("cannot write '" + edges_out + "'");
    out << sol->network.to_json().dump() << '\n';
  }
  if (f.out.empty()) {
    std::cout << pmcsn::ResultRecord::csv_header() << '\n' << rec.to_csv() << '\n';
  } else {
    pmcsn::append_record(f.out, rec);
  }
  if (!f.jsonl.empty()) {
    std::ofstream js(f.jsonl, std::ios::app);
    auto j = rec.to_json();
    j["solution"] = sol->to_json(edges_out);
    js << j.dump() << '\n';
  }
  return 0;
}

int cmd_sweep(const CommonFlags& f, const std::vector<std::string>& algos,
              const std::vector<double>& budgets, const std::vector<std::size_t>& ells,
              std::size_t repeats) {
  auto cfg = base_config(f);
  pmcsn::SweepGrid grid{budgets, ells, {}, repeats};
  for (const auto& a : algos) grid.algorithms.push_back(pmcsn::parse_algorithm(a));
  std::optional<std::filesystem::path> jsonl;
  if (!f.jsonl.empty()) jsonl = f.jsonl;
  const auto summary = pmcsn::sweep(grid, cfg, f.out, jsonl);
  std::cerr << "sweep: " << summary.written << " rows written, " << summary.skipped
            << " already present\n";
  return 0;
}

int cmd_oracle(const CommonFlags& f, double budget, std::size_t ell, std::size_t cap) {
  auto cfg = base_config(f);
  cfg.budget = budget;
  cfg.ell = ell;
  cfg.validate();
  const auto inst = pmcsn::make_instance(cfg);
  pmcsn::ExactLimits limits;
  limits.max_networks = cap;
  const auto opt = pmcsn::exact_optimum(inst.data.graph, ell, inst.probs, inst.cb, budget, limits);
  nlohmann::json j;
  j["seed_set"] = opt.seeds;
  j["profit"] = opt.profit.convert_to<double>();
  j["profit_exact"] = opt.profit.str(40);
  j["network_index"] = opt.network_index;
  j["networks"] = opt.networks;
  j["network"] = opt.network.to_json();
  std::cout << j.dump(2) << '\n';
  return 0;
}

int cmd_validate(const std::string& dataset, bool undirected, std::size_t ell,
                 const std::string& network_path) {
  const auto data = pmcsn::load_edge_list(dataset, !undirected);
  std::ifstream in(network_path);
  if (!in) throw pmcsn::DataError("cannot read network file '" + network_path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw pmcsn::DataError(std::string("network file: ") + e.what());
  }
  const auto arcs = pmcsn::arc_list_from_json(j);
  if (auto v = pmcsn::validate_arc_list(data.graph, arcs, ell)) {
    std::cout << "violation at node " << v->node << ": " << v->reason << '\n';
    return kExitData;
  }
  std::cout << "ok\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Profit maximization in closed social networks"};
  app.require_subcommand(1);
  app.set_version_flag("--version", PMCSN_VERSION);

  CommonFlags flags;
  std::string algo = "random";
  double budget = 500.0;
  std::size_t ell = 4;
  std::string edges_out;

  auto* run = app.add_subcommand("run", "Run one solver and emit a result row");
  add_instance_flags(run, flags);
  add_solver_flags(run, flags);
  run->add_option("--algo", algo, "sba, heu, random or highdeg")
      ->check(CLI::IsMember({"sba", "heu", "random", "highdeg"}));
  run->add_option("--budget", budget, "Budget B");
  run->add_option("--ell", ell, "Out-degree cap");
  run->add_option("--out", flags.out, "Append the row to this CSV (stdout if omitted)");
  run->add_option("--edges-out", edges_out, "Write the chosen diffusion network as JSON");

  std::vector<std::string> sweep_algos = {"sba", "heu", "random", "highdeg"};
  std::vector<double> sweep_budgets = {500, 1000, 1500, 2000, 2500};
  std::vector<std::size_t> sweep_ells = {4, 12, 20, 28};
  std::size_t repeats = 5;
  auto* sw = app.add_subcommand("sweep", "Run a budget x ell x algorithm grid");
  add_instance_flags(sw, flags);
  add_solver_flags(sw, flags);
  sw->add_option("--algo", sweep_algos, "Algorithms (comma separated)")->delimiter(',');
  sw->add_option("--budget", sweep_budgets, "Budgets (comma separated)")->delimiter(',');
  sw->add_option("--ell", sweep_ells, "Caps (comma separated)")->delimiter(',');
  sw->add_option("--repeats", repeats, "Repeats per cell");
  sw->add_option("--out", flags.out, "Result CSV (appended, resumable)")->required();

  std::size_t cap = 4096;
  auto* oracle = app.add_subcommand("oracle", "Exact optimum by exhaustive search (tiny graphs)");
  add_instance_flags(oracle, flags);
  oracle->add_option("--budget", budget, "Budget B");
  oracle->add_option("--ell", ell, "Out-degree cap");
  oracle->add_option("--max-networks", cap, "Refuse instances with more diffusion networks");

  pmcsn::SampleBoundParams bound;
  auto* sb = app.add_subcommand("sample-bound", "Sample count for the sampling-based approach");
  sb->add_option("--eps", bound.epsilon, "Accuracy epsilon in (0,1)");
  sb->add_option("--delta", bound.delta, "Failure probability delta in (0,1)");
  sb->add_option("--rho", bound.rho, "Estimated-to-maximum profit ratio in (0,1]");

  std::string network_path;
  auto* val = app.add_subcommand("validate", "Check a diffusion network against a graph");
  val->add_option("--dataset", flags.dataset, "SNAP-style edge list")->required();
  val->add_flag("--undirected", flags.undirected, "Treat each line as an undirected edge");
  val->add_option("--ell", ell, "Out-degree cap");
  val->add_option("--network", network_path, "Network JSON written by run --edges-out")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*run) return cmd_run(flags, algo, budget, ell, edges_out);
    if (*sw) return cmd_sweep(flags, sweep_algos, sweep_budgets, sweep_ells, repeats);
    if (*oracle) return cmd_oracle(flags, budget, ell, cap);
    if (*sb) {
      std::cout << pmcsn::sample_bound(bound) << '\n';
      return 0;
    }
    if (*val) return cmd_validate(flags.dataset, flags.undirected, ell, network_path);
  } catch (const pmcsn::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const pmcsn::DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const pmcsn::LimitExceeded& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
  return 0;
}
