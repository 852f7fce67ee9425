#include "pmcsn/experiment.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "pmcsn/errors.hpp"
#include "pmcsn/rng.hpp"

namespace pmcsn {

namespace {

std::string fmt(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

template <class T>
T parse_number(std::string_view s, const char* column) {
  T value{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw DataError(std::string("result row: bad value in column ") + column);
  return value;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto comma = line.find(',', start);
    out.push_back(line.substr(start, comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string prob_model_tag(ProbabilityModel m, WeightedCascadeMode mode) {
  if (m == ProbabilityModel::WeightedCascade && mode == WeightedCascadeMode::TargetInDegree)
    return "wc-target";
  return std::string(to_string(m));
}

std::string dataset_tag(const std::filesystem::path& p) { return p.filename().string(); }

std::string hex64(std::uint64_t v) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i, v >>= 4) s[static_cast<std::size_t>(i)] = digits[v & 0xF];
  return s;
}

}  // namespace

void ExperimentConfig::validate() const {
  if (dataset.empty()) throw ConfigError("dataset: path required");
  const auto tag = dataset_tag(dataset);
  if (tag.find_first_of(",\"\n") != std::string::npos)
    throw ConfigError("dataset: file name must not contain commas or quotes");
  if (prob_model == ProbabilityModel::Custom) throw ConfigError("prob-model: trivalency or wc required");
  cost_model.validate();
  benefit_model.validate();
  if (!(budget > 0.0) || !std::isfinite(budget)) throw ConfigError("budget: must be positive");
  if (ell == 0) throw ConfigError("ell: must be at least 1");
  if (samples == 0) throw ConfigError("samples: must be at least 1");
  if (mc == 0) throw ConfigError("mc: must be at least 1");
  if (mc_report == 0) throw ConfigError("mc-report: must be at least 1");
  if (!(heu_eps > 0.0 && heu_eps < 1.0)) throw ConfigError("heu-eps: must lie in (0, 1)");
  if (threads == 0) throw ConfigError("threads: must be at least 1");
}

SolverOptions ExperimentConfig::solver_options() const {
  return {budget, ell, mc, mc_report, seed, threads};
}

Instance make_instance(const ExperimentConfig& cfg) {
  Instance inst{load_edge_list(cfg.dataset, !cfg.undirected), {}, {}};
  const Graph& g = inst.data.graph;
  inst.probs = cfg.prob_model == ProbabilityModel::Trivalency
                   ? assign_trivalency(g, cfg.prob_seed)
                   : assign_weighted_cascade(g, cfg.wc_mode);
  inst.cb = assign_cost_benefit(g, cfg.cost_model, cfg.benefit_model, cfg.cost_benefit_seed);
  return inst;
}

// ---------------------------------------------------------------------------

const std::vector<std::string>& ResultRecord::csv_columns() {
  static const std::vector<std::string> columns = {
      "dataset", "prob_model", "algo", "budget", "ell",           "repeat",     "seed",    "n_seeds",
      "cost",    "profit_mean", "profit_stderr", "R", "x", "elapsed_ms", "checksum"};
  return columns;
}

std::string ResultRecord::csv_header() {
  std::string out;
  for (const auto& c : csv_columns()) {
    if (!out.empty()) out += ',';
    out += c;
  }
  return out;
}

std::string ResultRecord::key() const {
  return dataset + ',' + prob_model + ',' + algo + ',' + fmt(budget) + ',' + std::to_string(ell) +
         ',' + std::to_string(repeat) + ',' + std::to_string(seed);
}

std::string ResultRecord::compute_checksum() const {
  const std::string values = key() + ',' + std::to_string(n_seeds) + ',' + fmt(cost) + ',' +
                             fmt(profit_mean) + ',' + fmt(profit_stderr) + ',' +
                             std::to_string(replications) + ',' + std::to_string(samples);
  return hex64(fnv1a64(values));
}

std::string ResultRecord::to_csv() const {
  return key() + ',' + std::to_string(n_seeds) + ',' + fmt(cost) + ',' + fmt(profit_mean) + ',' +
         fmt(profit_stderr) + ',' + std::to_string(replications) + ',' + std::to_string(samples) +
         ',' + fmt(elapsed_ms) + ',' + checksum;
}

nlohmann::json ResultRecord::to_json() const {
  return {{"dataset", dataset},
          {"prob_model", prob_model},
          {"algo", algo},
          {"budget", budget},
          {"ell", ell},
          {"repeat", repeat},
          {"seed", seed},
          {"n_seeds", n_seeds},
          {"cost", cost},
          {"profit_mean", profit_mean},
          {"profit_stderr", profit_stderr},
          {"R", replications},
          {"x", samples},
          {"elapsed_ms", elapsed_ms},
          {"checksum", checksum},
          {"seed_set", seed_set},
          {"config", config},
          {"version", PMCSN_VERSION}};
}

ResultRecord ResultRecord::from_csv(const std::string& line) {
  auto f = split_csv(line);
  if (f.size() != csv_columns().size())
    throw DataError("result row has " + std::to_string(f.size()) + " fields, expected " +
                    std::to_string(csv_columns().size()));
  ResultRecord r;
  r.dataset = f[0];
  r.prob_model = f[1];
  r.algo = f[2];
  r.budget = parse_number<double>(f[3], "budget");
  r.ell = parse_number<std::size_t>(f[4], "ell");
  r.repeat = parse_number<std::size_t>(f[5], "repeat");
  r.seed = parse_number<std::uint64_t>(f[6], "seed");
  r.n_seeds = parse_number<std::size_t>(f[7], "n_seeds");
  r.cost = parse_number<double>(f[8], "cost");
  r.profit_mean = parse_number<double>(f[9], "profit_mean");
  r.profit_stderr = parse_number<double>(f[10], "profit_stderr");
  r.replications = parse_number<std::size_t>(f[11], "R");
  r.samples = parse_number<std::size_t>(f[12], "x");
  r.elapsed_ms = parse_number<double>(f[13], "elapsed_ms");
  r.checksum = f[14];
  if (r.checksum != r.compute_checksum()) throw DataError("result row checksum mismatch");
  return r;
}

// ---------------------------------------------------------------------------

ResultRecord run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  return run_experiment(cfg, make_instance(cfg));
}

ResultRecord run_experiment(const ExperimentConfig& cfg, const Instance& inst,
                            std::optional<Solution>* solution_out) {
  cfg.validate();
  const Graph& g = inst.data.graph;
  const SolverOptions opts = cfg.solver_options();

  auto solve = [&]() -> Solution {
    switch (cfg.algorithm) {
      case Algorithm::Sba: return solve_sba(g, inst.probs, inst.cb, opts, cfg.samples);
      case Algorithm::Heu: return solve_heu(g, inst.probs, inst.cb, opts, {cfg.heu_eps, cfg.gain});
      case Algorithm::Random: return solve_random(g, inst.probs, inst.cb, opts);
      case Algorithm::HighDegree: return solve_high_degree(g, inst.probs, inst.cb, opts);
    }
    throw ConfigError("algo: unsupported");
  };
  Solution sol = solve();

  ResultRecord r;
  r.dataset = dataset_tag(cfg.dataset);
  r.prob_model = prob_model_tag(cfg.prob_model, cfg.wc_mode);
  r.algo = std::string(to_string(cfg.algorithm));
  r.budget = cfg.budget;
  r.ell = cfg.ell;
  r.repeat = cfg.repeat;
  r.seed = cfg.seed;
  r.n_seeds = sol.seeds.size();
  r.cost = sol.cost;
  r.profit_mean = sol.profit.mean;
  r.profit_stderr = sol.profit.std_error;
  r.replications = sol.profit.replications;
  r.samples = cfg.algorithm == Algorithm::Sba ? cfg.samples : 1;
  r.elapsed_ms = sol.elapsed_ms;
  r.seed_set = sol.seeds;
  r.config = sol.config;
  r.config["dataset"] = cfg.dataset.string();
  r.config["undirected"] = cfg.undirected;
  r.config["prob_model"] = r.prob_model;
  r.config["prob_seed"] = cfg.prob_seed;
  r.config["cost_model"] = cfg.cost_model.describe();
  r.config["benefit_model"] = cfg.benefit_model.describe();
  r.config["cost_benefit_seed"] = cfg.cost_benefit_seed;
  r.checksum = r.compute_checksum();
  if (solution_out) *solution_out = std::move(sol);
  return r;
}

std::uint64_t repeat_seed(std::uint64_t master, Algorithm algo, double budget, std::size_t ell,
                          std::size_t repeat) {
  const std::string cell = std::string(to_string(algo)) + '|' + fmt(budget) + '|' + std::to_string(ell);
  return derive_seed(master ^ fnv1a64(cell), repeat, "sweep-repeat");
}

std::vector<ResultRecord> read_results(const std::filesystem::path& csv) {
  std::vector<ResultRecord> rows;
  std::ifstream in(csv, std::ios::binary);
  if (!in) return rows;
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  if (text.empty()) return rows;
  if (text.back() != '\n') throw DataError(csv.string() + ": last row is incomplete (partial write)");

  std::istringstream lines(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(lines, line)) {
    ++line_no;
    if (line_no == 1) {
      if (line != ResultRecord::csv_header())
        throw DataError(csv.string() + ": unexpected header");
      continue;
    }
    if (line.empty()) continue;
    try {
      rows.push_back(ResultRecord::from_csv(line));
    } catch (const DataError& e) {
      throw DataError(csv.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return rows;
}

void append_record(const std::filesystem::path& csv, const ResultRecord& rec) {
  const bool fresh = !std::filesystem::exists(csv) || std::filesystem::file_size(csv) == 0;
  std::string chunk;
  if (fresh) chunk = ResultRecord::csv_header() + '\n';
  chunk += rec.to_csv() + '\n';
  std::ofstream out(csv, std::ios::binary | std::ios::app);
  if (!out) throw DataError("cannot open result file '" + csv.string() + "'");
  out.write(chunk.data(), static_cast<std::streamsize>(chunk.size()));
  out.flush();
  if (!out) throw DataError("write failed on '" + csv.string() + "'");
}

SweepSummary sweep(const SweepGrid& grid, const ExperimentConfig& base,
                   const std::filesystem::path& out_csv,
                   const std::optional<std::filesystem::path>& out_jsonl) {
  if (grid.cells() == 0 || grid.repeats == 0) throw ConfigError("sweep: grid is empty");
  base.validate();
  for (double b : grid.budgets)
    if (!(b > 0.0)) throw ConfigError("sweep: budgets must be positive");
  for (std::size_t l : grid.ells)
    if (l == 0) throw ConfigError("sweep: ell values must be at least 1");

  std::unordered_set<std::string> done;
  for (const auto& row : read_results(out_csv)) done.insert(row.key());

  const Instance inst = make_instance(base);
  SweepSummary summary;
  for (std::size_t ell : grid.ells) {
    for (double budget : grid.budgets) {
      for (Algorithm algo : grid.algorithms) {
        for (std::size_t rep = 0; rep < grid.repeats; ++rep) {
          ExperimentConfig cfg = base;
          cfg.ell = ell;
          cfg.budget = budget;
          cfg.algorithm = algo;
          cfg.repeat = rep;
          cfg.seed = repeat_seed(base.seed, algo, budget, ell, rep);

          ResultRecord probe;
          probe.dataset = dataset_tag(cfg.dataset);
          probe.prob_model = prob_model_tag(cfg.prob_model, cfg.wc_mode);
          probe.algo = std::string(to_string(algo));
          probe.budget = budget;
          probe.ell = ell;
          probe.repeat = rep;
          probe.seed = cfg.seed;
          if (done.contains(probe.key())) {
            ++summary.skipped;
            continue;
          }

          ResultRecord rec = run_experiment(cfg, inst);
          append_record(out_csv, rec);
          if (out_jsonl) {
            std::ofstream js(*out_jsonl, std::ios::binary | std::ios::app);
            js << rec.to_json().dump() << '\n';
          }
          done.insert(rec.key());
          ++summary.written;
        }
      }
    }
  }
  return summary;
}

}  // namespace pmcsn
