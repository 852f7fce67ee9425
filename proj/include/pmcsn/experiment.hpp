#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "pmcsn/graph.hpp"
#include "pmcsn/solvers.hpp"

namespace pmcsn {

struct ExperimentConfig {
  std::filesystem::path dataset;
  bool undirected = false;

  ProbabilityModel prob_model = ProbabilityModel::Trivalency;
  WeightedCascadeMode wc_mode = WeightedCascadeMode::SourceDegree;
  std::uint64_t prob_seed = 1;

  CostModel cost_model = CostModel::degree_proportional(1.0, 0.1);
  BenefitModel benefit_model = BenefitModel::uniform(10.0);
  std::uint64_t cost_benefit_seed = 1;

  Algorithm algorithm = Algorithm::Random;
  double budget = 500.0;
  std::size_t ell = 4;
  std::size_t samples = 50;  ///< SBA x
  std::size_t mc = 100;      ///< search replications
  std::size_t mc_report = 10000;
  double heu_eps = 0.1;
  GainMetric gain = GainMetric::Benefit;

  std::uint64_t seed = 1;  ///< solver master seed
  std::size_t repeat = 0;
  unsigned threads = 1;

  /// Throws ConfigError naming the offending field.
  void validate() const;
  SolverOptions solver_options() const;
};

/// Graph plus the tables derived from a config, shared by sweep cells.
struct Instance {
  LoadResult data;
  EdgeProbabilities probs;
  CostBenefitTable cb;
};

Instance make_instance(const ExperimentConfig& cfg);

/// One CSV row.
struct ResultRecord {
  std::string dataset;
  std::string prob_model;
  std::string algo;
  double budget = 0.0;
  std::size_t ell = 0;
  std::size_t repeat = 0;
  std::uint64_t seed = 0;
  std::size_t n_seeds = 0;
  double cost = 0.0;
  double profit_mean = 0.0;
  double profit_stderr = 0.0;
  std::size_t replications = 0;
  std::size_t samples = 0;
  double elapsed_ms = 0.0;
  std::string checksum;

  std::vector<NodeId> seed_set;
  nlohmann::json config;

  static const std::vector<std::string>& csv_columns();
  static std::string csv_header();

  /// FNV-1a over every value column except elapsed_ms, as 16 hex digits.
  std::string compute_checksum() const;
  /// Identity of the row inside a sweep: dataset, prob model, algo, budget,
  /// ell, repeat and seed.
  std::string key() const;
  std::string to_csv() const;
  nlohmann::json to_json() const;

  /// Parses a CSV row; throws DataError if malformed or if the stored
  /// checksum does not match the values.
  static ResultRecord from_csv(const std::string& line);
};

/// Loads the dataset, assigns tables and runs the configured solver. The
/// recorded time covers only the solver call.
ResultRecord run_experiment(const ExperimentConfig& cfg);
ResultRecord run_experiment(const ExperimentConfig& cfg, const Instance& instance,
                            std::optional<Solution>* solution_out = nullptr);

struct SweepGrid {
  std::vector<double> budgets;
  std::vector<std::size_t> ells;
  std::vector<Algorithm> algorithms;
  std::size_t repeats = 1;

  std::size_t cells() const { return budgets.size() * ells.size() * algorithms.size(); }
};

/// Seed for one repeat of one cell: derived from the master seed, the cell
/// key and the repeat index.
std::uint64_t repeat_seed(std::uint64_t master, Algorithm algo, double budget, std::size_t ell,
                          std::size_t repeat);

struct SweepSummary {
  std::size_t written = 0;
  std::size_t skipped = 0;
};

/// Runs every (budget, ell, algorithm, repeat) cell, appending one row per
/// cell to `out_csv` (and `out_jsonl` when given). Rows whose key already
/// exists in `out_csv` are skipped, so an interrupted sweep can be rerun.
SweepSummary sweep(const SweepGrid& grid, const ExperimentConfig& base,
                   const std::filesystem::path& out_csv,
                   const std::optional<std::filesystem::path>& out_jsonl = std::nullopt);

/// Reads and verifies every row of a result file (empty if absent).
std::vector<ResultRecord> read_results(const std::filesystem::path& csv);

/// Appends a row, writing the header first if the file is new or empty.
void append_record(const std::filesystem::path& csv, const ResultRecord& rec);

}  // namespace pmcsn
