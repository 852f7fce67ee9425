#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "doctest.h"

#include "pmcsn/errors.hpp"
#include "pmcsn/exact.hpp"
#include "pmcsn/experiment.hpp"

using namespace pmcsn;
namespace fs = std::filesystem;

namespace {

ExperimentConfig tiny_config() {
  ExperimentConfig cfg;
  cfg.dataset = fs::path(PMCSN_DATA_DIR) / "tiny.txt";
  cfg.budget = 5.0;
  cfg.ell = 2;
  cfg.samples = 4;
  cfg.mc = 40;
  cfg.mc_report = 400;
  return cfg;
}

struct TempFile {
  fs::path path;
  explicit TempFile(const std::string& name) : path(fs::temp_directory_path() / name) { fs::remove(path); }
  ~TempFile() { fs::remove(path); }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("config validation names the field") {
  auto cfg = tiny_config();
  cfg.budget = 0;
  CHECK_THROWS_WITH_AS(cfg.validate(), doctest::Contains("budget"), ConfigError);
  cfg = tiny_config();
  cfg.ell = 0;
  CHECK_THROWS_WITH_AS(cfg.validate(), doctest::Contains("ell"), ConfigError);
  cfg = tiny_config();
  cfg.heu_eps = 1.0;
  CHECK_THROWS_WITH_AS(cfg.validate(), doctest::Contains("heu-eps"), ConfigError);
  cfg = tiny_config();
  cfg.dataset = "/nonexistent.txt";
  CHECK_THROWS_AS(run_experiment(cfg), DataError);
}

TEST_CASE("run_experiment echoes the constraints and is deterministic") {
  for (auto algo : {Algorithm::Sba, Algorithm::Heu, Algorithm::Random, Algorithm::HighDegree}) {
    auto cfg = tiny_config();
    cfg.algorithm = algo;
    const auto inst = make_instance(cfg);
    std::optional<Solution> sol;
    const auto a = run_experiment(cfg, inst, &sol);
    const auto b = run_experiment(cfg);
    CHECK(a.cost <= cfg.budget);
    CHECK(a.elapsed_ms > 0.0);
    for (NodeId u = 0; u < inst.data.graph.node_count(); ++u) CHECK(sol->network.retained_out_degree(u) <= 2);
    CHECK(a.checksum == b.checksum);
    CHECK(a.profit_mean == b.profit_mean);
    CHECK(a.seed_set == b.seed_set);
    CHECK(a.samples == (algo == Algorithm::Sba ? 4 : 1));
  }
}

TEST_CASE("SBA over every network stays below the oracle") {
  auto cfg = tiny_config();
  cfg.cost_model = CostModel::uniform(1.0);
  cfg.benefit_model = BenefitModel::uniform(1.0);
  cfg.budget = 2.0;
  cfg.algorithm = Algorithm::Sba;
  const auto inst = make_instance(cfg);
  cfg.samples = count_diffusion_networks(inst.data.graph, cfg.ell).convert_to<std::size_t>();
  std::optional<Solution> sol;
  run_experiment(cfg, inst, &sol);
  const auto opt = exact_optimum(inst.data.graph, cfg.ell, inst.probs, inst.cb, cfg.budget);
  CHECK(exact_profit(sol->network, inst.probs, inst.cb, sol->seeds) <= opt.profit);
}

TEST_CASE("result rows round-trip and detect tampering") {
  auto cfg = tiny_config();
  const auto rec = run_experiment(cfg);
  const auto line = rec.to_csv();
  const auto back = ResultRecord::from_csv(line);
  CHECK(back.to_csv() == line);
  CHECK(back.key() == rec.key());

  auto tampered = line;
  tampered[tampered.find("tiny") + 3] = 'z';
  CHECK_THROWS_AS(ResultRecord::from_csv(tampered), DataError);

  auto other = rec;
  other.profit_mean += 1.0;
  CHECK(other.compute_checksum() != rec.checksum);
  other = rec;
  other.elapsed_ms += 100.0;
  CHECK(other.compute_checksum() == rec.checksum);

  CHECK(ResultRecord::csv_header() ==
        "dataset,prob_model,algo,budget,ell,repeat,seed,n_seeds,cost,profit_mean,profit_stderr,R,x,elapsed_ms,checksum");
  const auto j = rec.to_json();
  CHECK(j.contains("seed_set"));
  CHECK(j.contains("version"));
}

TEST_CASE("sweep cardinality and resumability") {
  TempFile out("pmcsn_sweep_test.csv");
  TempFile js("pmcsn_sweep_test.jsonl");
  auto base = tiny_config();
  const SweepGrid grid{{500, 1000, 1500, 2000, 2500}, {4}, {Algorithm::Random}, 3};
  const auto first = sweep(grid, base, out.path, js.path);
  CHECK(first.written == 15);
  CHECK(read_results(out.path).size() == 15);
  const auto snapshot = slurp(out.path);

  const auto again = sweep(grid, base, out.path);
  CHECK(again.written == 0);
  CHECK(again.skipped == 15);
  CHECK(slurp(out.path) == snapshot);

  // Drop the last two rows, as if the run had been interrupted.
  auto text = snapshot;
  for (int i = 0; i < 2; ++i) text.erase(text.rfind('\n', text.size() - 2) + 1);
  {
    std::ofstream o(out.path, std::ios::binary | std::ios::trunc);
    o << text;
  }
  const auto resumed = sweep(grid, base, out.path);
  CHECK(resumed.written == 2);
  const auto rows = read_results(out.path);
  CHECK(rows.size() == 15);
  std::set<std::string> keys;
  for (const auto& r : rows) keys.insert(r.key());
  CHECK(keys.size() == 15);

  SUBCASE("different repeats use different seeds") {
    std::set<std::uint64_t> seeds;
    for (const auto& r : rows) seeds.insert(r.seed);
    CHECK(seeds.size() == 15);
  }
  SUBCASE("partial trailing row is detected") {
    std::ofstream o(out.path, std::ios::binary | std::ios::app);
    o << "tiny.txt,trivalency,random,500";
    o.close();
    CHECK_THROWS_AS(read_results(out.path), DataError);
  }
}

TEST_CASE("full budget x ell x algorithm grid gives 80 rows") {
  TempFile out("pmcsn_sweep_grid.csv");
  auto base = tiny_config();
  base.samples = 2;
  base.mc = 5;
  base.mc_report = 20;
  const SweepGrid grid{{500, 1000, 1500, 2000, 2500},
                       {4, 12, 20, 28},
                       {Algorithm::Sba, Algorithm::Heu, Algorithm::Random, Algorithm::HighDegree},
                       1};
  CHECK(sweep(grid, base, out.path).written == 80);
  CHECK(read_results(out.path).size() == 80);
}
